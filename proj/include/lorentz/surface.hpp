#pragma once

#include <algorithm>
#include <functional>
#include <string>

#include "lorentz/vec3.hpp"

namespace lorentz {

// Position and partial derivatives up to second order at one parameter point.
struct Jet2 {
    Vec3 x;
    Vec3 xu, xv;
    Vec3 xuu, xuv, xvv;
};

struct Domain {
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;

    bool contains(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
    double u_extent() const { return u_max - u_min; }
    double v_extent() const { return v_max - v_min; }
};

// Parametric surface chart with 2-jet evaluation. Immutable after
// construction; evaluation is pure, so patches are safe to share across
// threads. When no exact jet is supplied, jets come from second-order
// central finite differences with step fd_step.
class SurfacePatch {
  public:
    using PositionFn = std::function<Vec3(double, double)>;
    using JetFn = std::function<Jet2(double, double)>;
    using MaskFn = std::function<bool(double, double)>;

    SurfacePatch() = default;
    SurfacePatch(Domain domain, PositionFn position, JetFn exact_jet = nullptr,
                 MaskFn mask = nullptr, std::string name = "");

    const Domain& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    bool has_exact_jet() const { return static_cast<bool>(exact_jet_); }
    double fd_step() const { return fd_step_; }

    // True where the patch is defined (inside the domain and unmasked).
    bool masked_at(double u, double v) const;

    // Position only. Throws OutOfDomain / Masked.
    Vec3 eval(double u, double v) const;

    // Full 2-jet. Finite-difference evaluation additionally requires the
    // point to be at least 2*fd_step from the domain boundary.
    Jet2 jet2(double u, double v) const;

    // Position without the domain/mask checks; used internally by finite
    // differencing and by invert_patch's mask predicate.
    Vec3 eval_unchecked(double u, double v) const { return position_(u, v); }

  private:
    Domain domain_;
    PositionFn position_;
    JetFn exact_jet_;
    MaskFn mask_;
    double fd_step_ = 1e-5;
    std::string name_;
};

// Euclidean sphere |p - center| = r, chart
//   (u, v) -> center + r (cos u sin v, sin u sin v, cos v)
// over (eps0, eps0 + 2 pi) x (0, pi). The two poles are not covered; use
// builtin_sphere_polar_x for a chart whose excluded points lie on the x axis
// instead.
SurfacePatch builtin_sphere(Vec3 center, double r);

// Same sphere, rotated chart: center + r (cos v, sin u sin v, cos u sin v).
// Covers the poles of the standard chart.
SurfacePatch builtin_sphere_polar_x(Vec3 center, double r);

// Axis-aligned ellipsoid, trigonometric chart with exact derivatives.
SurfacePatch builtin_ellipsoid(Vec3 center, Vec3 semiaxes);

// Graph z = offset.x2 + q(u, v) over [-extent, extent]^2 shifted by
// (offset.x0, offset.x1), where q is the quadratic
// (cuu u^2 + 2 cuv u v + cvv v^2) / 2.
SurfacePatch builtin_graph_quadratic(double cuu, double cuv, double cvv,
                                     Vec3 offset = {}, double extent = 1.0);

// Rigid translation of the image; derivatives are untouched.
SurfacePatch translate(const SurfacePatch& patch, Vec3 t);

// Composition with the Mobius inversion. The mask is strengthened to
// |<phi,phi>| > tol. When the source carries exact jets the composed jets
// are evaluated by the closed-form chain rule (a fixed rational expression
// in the source jet), otherwise by finite differences of the composed map.
SurfacePatch invert_patch(const SurfacePatch& patch, double tol = 1e-9);

// Chain rule of the inversion at jet level; exposed for tests and for the
// pushforward checks. Throws NearLightCone when |<x,x>| <= tol.
Jet2 invert_jet(const Jet2& j, double tol = 1e-9);

}  // namespace lorentz
