#include "lorentz/surface.hpp"

#include <cmath>
#include <utility>

namespace lorentz {

namespace {
constexpr double kSphereEps0 = 1e-3;  // chart seam offset for the sphere charts
constexpr double kPi = 3.14159265358979323846;
}  // namespace

SurfacePatch::SurfacePatch(Domain domain, PositionFn position, JetFn exact_jet,
                           MaskFn mask, std::string name)
    : domain_(domain),
      position_(std::move(position)),
      exact_jet_(std::move(exact_jet)),
      mask_(std::move(mask)),
      name_(std::move(name)) {
    const double scale = std::max(domain_.u_extent(), domain_.v_extent());
    fd_step_ = std::max(1e-5, 1e-5 * scale);
}

bool SurfacePatch::masked_at(double u, double v) const {
    if (!domain_.contains(u, v)) return true;
    return mask_ && !mask_(u, v);
}

Vec3 SurfacePatch::eval(double u, double v) const {
    if (!domain_.contains(u, v))
        throw OutOfDomain("eval: (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") outside the patch domain");
    if (mask_ && !mask_(u, v))
        throw Masked("eval: parameter point is masked");
    return position_(u, v);
}

Jet2 SurfacePatch::jet2(double u, double v) const {
    if (!domain_.contains(u, v))
        throw OutOfDomain("jet2: parameter point outside the patch domain");
    if (mask_ && !mask_(u, v))
        throw Masked("jet2: parameter point is masked");
    if (exact_jet_) return exact_jet_(u, v);

    const double h = fd_step_;
    if (u - domain_.u_min < 2 * h || domain_.u_max - u < 2 * h ||
        v - domain_.v_min < 2 * h || domain_.v_max - v < 2 * h)
        throw OutOfDomain("jet2: point closer than 2h to the boundary of an "
                          "FD-evaluated patch");

    const Vec3 c = position_(u, v);
    const Vec3 pu = position_(u + h, v), mu = position_(u - h, v);
    const Vec3 pv = position_(u, v + h), mv = position_(u, v - h);
    const Vec3 pp = position_(u + h, v + h), pm = position_(u + h, v - h);
    const Vec3 mp = position_(u - h, v + h), mm = position_(u - h, v - h);

    Jet2 j;
    j.x = c;
    j.xu = (pu - mu) / (2 * h);
    j.xv = (pv - mv) / (2 * h);
    j.xuu = (pu - 2 * c + mu) / (h * h);
    j.xvv = (pv - 2 * c + mv) / (h * h);
    j.xuv = (pp - pm - mp + mm) / (4 * h * h);
    return j;
}

SurfacePatch builtin_sphere(Vec3 center, double r) {
    if (!(r > 0.0)) throw NonpositiveRadius("builtin_sphere: r must be positive");
    const Domain dom{kSphereEps0, kSphereEps0 + 2 * kPi, 0.0, kPi};
    auto pos = [center, r](double u, double v) -> Vec3 {
        return center + Vec3{r * std::cos(u) * std::sin(v),
                             r * std::sin(u) * std::sin(v),
                             r * std::cos(v)};
    };
    auto jet = [center, r](double u, double v) -> Jet2 {
        const double cu = std::cos(u), su = std::sin(u);
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = center + Vec3{r * cu * sv, r * su * sv, r * cv};
        j.xu = {-r * su * sv, r * cu * sv, 0.0};
        j.xv = {r * cu * cv, r * su * cv, -r * sv};
        j.xuu = {-r * cu * sv, -r * su * sv, 0.0};
        j.xuv = {-r * su * cv, r * cu * cv, 0.0};
        j.xvv = {-r * cu * sv, -r * su * sv, -r * cv};
        return j;
    };
    return SurfacePatch(dom, pos, jet, nullptr, "sphere");
}

SurfacePatch builtin_sphere_polar_x(Vec3 center, double r) {
    if (!(r > 0.0)) throw NonpositiveRadius("builtin_sphere_polar_x: r must be positive");
    const Domain dom{kSphereEps0, kSphereEps0 + 2 * kPi, 0.0, kPi};
    auto pos = [center, r](double u, double v) -> Vec3 {
        return center + Vec3{r * std::cos(v),
                             r * std::sin(u) * std::sin(v),
                             r * std::cos(u) * std::sin(v)};
    };
    auto jet = [center, r](double u, double v) -> Jet2 {
        const double cu = std::cos(u), su = std::sin(u);
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = center + Vec3{r * cv, r * su * sv, r * cu * sv};
        j.xu = {0.0, r * cu * sv, -r * su * sv};
        j.xv = {-r * sv, r * su * cv, r * cu * cv};
        j.xuu = {0.0, -r * su * sv, -r * cu * sv};
        j.xuv = {0.0, r * cu * cv, -r * su * cv};
        j.xvv = {-r * cv, -r * su * sv, -r * cu * sv};
        return j;
    };
    return SurfacePatch(dom, pos, jet, nullptr, "sphere-polar-x");
}

SurfacePatch builtin_ellipsoid(Vec3 center, Vec3 semiaxes) {
    if (!(semiaxes.x0 > 0.0) || !(semiaxes.x1 > 0.0) || !(semiaxes.x2 > 0.0))
        throw NonpositiveSemiaxis("builtin_ellipsoid: semiaxes must be positive");
    const double A = semiaxes.x0, B = semiaxes.x1, C = semiaxes.x2;
    const Domain dom{kSphereEps0, kSphereEps0 + 2 * kPi, 0.0, kPi};
    auto pos = [center, A, B, C](double u, double v) -> Vec3 {
        return center + Vec3{A * std::cos(u) * std::sin(v),
                             B * std::sin(u) * std::sin(v),
                             C * std::cos(v)};
    };
    auto jet = [center, A, B, C](double u, double v) -> Jet2 {
        const double cu = std::cos(u), su = std::sin(u);
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = center + Vec3{A * cu * sv, B * su * sv, C * cv};
        j.xu = {-A * su * sv, B * cu * sv, 0.0};
        j.xv = {A * cu * cv, B * su * cv, -C * sv};
        j.xuu = {-A * cu * sv, -B * su * sv, 0.0};
        j.xuv = {-A * su * cv, B * cu * cv, 0.0};
        j.xvv = {-A * cu * sv, -B * su * sv, -C * cv};
        return j;
    };
    return SurfacePatch(dom, pos, jet, nullptr, "ellipsoid");
}

SurfacePatch builtin_graph_quadratic(double cuu, double cuv, double cvv,
                                     Vec3 offset, double extent) {
    const Domain dom{-extent, extent, -extent, extent};
    auto q = [cuu, cuv, cvv](double u, double v) {
        return 0.5 * (cuu * u * u + 2 * cuv * u * v + cvv * v * v);
    };
    auto pos = [offset, q](double u, double v) -> Vec3 {
        return {u + offset.x0, v + offset.x1, offset.x2 + q(u, v)};
    };
    auto jet = [offset, q, cuu, cuv, cvv](double u, double v) -> Jet2 {
        Jet2 j;
        j.x = {u + offset.x0, v + offset.x1, offset.x2 + q(u, v)};
        j.xu = {1.0, 0.0, cuu * u + cuv * v};
        j.xv = {0.0, 1.0, cuv * u + cvv * v};
        j.xuu = {0.0, 0.0, cuu};
        j.xuv = {0.0, 0.0, cuv};
        j.xvv = {0.0, 0.0, cvv};
        return j;
    };
    return SurfacePatch(dom, pos, jet, nullptr, "graph");
}

SurfacePatch translate(const SurfacePatch& patch, Vec3 t) {
    auto pos = [patch, t](double u, double v) { return patch.eval_unchecked(u, v) + t; };
    SurfacePatch::JetFn jet;
    if (patch.has_exact_jet()) {
        jet = [patch, t](double u, double v) {
            Jet2 j = patch.jet2(u, v);
            j.x = j.x + t;
            return j;
        };
    }
    auto mask = [patch](double u, double v) { return !patch.masked_at(u, v); };
    return SurfacePatch(patch.domain(), pos, jet, mask, patch.name());
}

Jet2 invert_jet(const Jet2& j, double tol) {
    const double rho = minkowski_dot(j.x, j.x);
    if (std::fabs(rho) <= tol)
        throw NearLightCone("invert_jet: |<x,x>| below tolerance");
    const double ru = 2 * minkowski_dot(j.x, j.xu);
    const double rv = 2 * minkowski_dot(j.x, j.xv);
    const double ruu = 2 * (minkowski_dot(j.xu, j.xu) + minkowski_dot(j.x, j.xuu));
    const double ruv = 2 * (minkowski_dot(j.xu, j.xv) + minkowski_dot(j.x, j.xuv));
    const double rvv = 2 * (minkowski_dot(j.xv, j.xv) + minkowski_dot(j.x, j.xvv));
    const double r2 = rho * rho, r3 = r2 * rho;

    Jet2 q;
    q.x = j.x / rho;
    q.xu = j.xu / rho - (ru / r2) * j.x;
    q.xv = j.xv / rho - (rv / r2) * j.x;
    q.xuu = j.xuu / rho - (2 * ru / r2) * j.xu - (ruu / r2) * j.x + (2 * ru * ru / r3) * j.x;
    q.xuv = j.xuv / rho - (rv / r2) * j.xu - (ru / r2) * j.xv - (ruv / r2) * j.x +
            (2 * ru * rv / r3) * j.x;
    q.xvv = j.xvv / rho - (2 * rv / r2) * j.xv - (rvv / r2) * j.x + (2 * rv * rv / r3) * j.x;
    return q;
}

SurfacePatch invert_patch(const SurfacePatch& patch, double tol) {
    auto pos = [patch, tol](double u, double v) -> Vec3 {
        const Vec3 p = patch.eval_unchecked(u, v);
        return p / minkowski_dot(p, p);
    };
    auto mask = [patch, tol](double u, double v) {
        if (patch.masked_at(u, v)) return false;
        const Vec3 p = patch.eval_unchecked(u, v);
        return std::fabs(minkowski_dot(p, p)) > tol;
    };
    SurfacePatch::JetFn jet;
    if (patch.has_exact_jet()) {
        jet = [patch, tol](double u, double v) { return invert_jet(patch.jet2(u, v), tol); };
    }
    return SurfacePatch(patch.domain(), pos, jet, mask,
                        patch.name().empty() ? "inverted" : "inverted-" + patch.name());
}

}  // namespace lorentz
