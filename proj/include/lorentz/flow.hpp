#pragma once

#include <utility>
#include <vector>

#include "lorentz/forms.hpp"
#include "lorentz/surface.hpp"

namespace lorentz {

// Unit direction in parameter space, canonical sign du >= 0
// (dv > 0 when du == 0).
struct Dir2 {
    double du = 0, dv = 0;
};

// Zero, one, or two principal directions at a point. count == 1 happens
// exactly on the LPL where the two directions coincide.
struct DirectionPair {
    Dir2 d1, d2;
    int count = 0;
};

enum class StopReason {
    None,         // still running / finished all steps
    MaxSteps,
    Boundary,     // next sample would leave the domain
    MaskedCell,   // next sample is masked
    Degenerate,   // fewer than two principal directions (LPL or umbilic)
};

// Integrated line of principal curvature, as parameter-space samples.
struct PrincipalLine {
    std::vector<std::pair<double, double>> samples;
    int branch = 1;
    double step = 0;
    double residual_max = 0;  // BDE residual of the polyline on its own patch
    StopReason stop = StopReason::None;
};

// Solves A t^2 + B t + C = 0 for t = dv/du as a homogeneous quadratic, so
// the du = 0 root is handled without overflow. tol is both the absolute
// all-zero threshold on the coefficients and the relative (to
// max(|A|,|B|,|C|)^2) window in which the discriminant counts as zero.
// Throws AllZero when every coefficient is below tol. For count == 2 the
// directions are ordered by angle.
DirectionPair bde_roots(const BdeCoefficients& c, double tol = 1e-10);

// Fourth-order Runge-Kutta on the unit principal-direction field. At every
// evaluation the root closest in angle to the incoming direction is chosen
// and sign-aligned with it, so the line never jumps branches. Near the LPL
// (discriminant below the squared step) the step is halved up to 8 times
// before giving up. Throws BadStart when the start point has fewer than two
// directions.
PrincipalLine integrate_line(const SurfacePatch& patch, std::pair<double, double> start,
                             int branch, double step = 1e-3, int n_steps = 10000);

// Normalized BDE residual of a polyline against the patch's own BDE:
// tangents by central differences of the samples, each residual divided by
// max(|A|,|B|,|C|) and the squared tangent norm.
std::vector<double> polyline_bde_residual_samples(
    const SurfacePatch& patch, const std::vector<std::pair<double, double>>& pts);
double polyline_bde_residual(const SurfacePatch& patch,
                             const std::vector<std::pair<double, double>>& pts);

// Residual of the line against the INVERTED patch's BDE at the same
// parameter points (the inversion acts on the image, not the parameters).
// Throws MaskedSample if any sample is masked under the inverted patch.
double verify_line_preserved(const SurfacePatch& patch, const PrincipalLine& line,
                             double lc_tol = 1e-9);

}  // namespace lorentz
