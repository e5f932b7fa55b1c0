#include "lorentz/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace lorentz {

namespace {

Dir2 canonical(double du, double dv) {
    const double n = std::hypot(du, dv);
    du /= n;
    dv /= n;
    // sign toward +u, with a dead zone so roundoff in a vertical direction
    // cannot flip it
    if (du < -1e-12 || (std::fabs(du) <= 1e-12 && dv < 0)) {
        du = -du;
        dv = -dv;
    }
    return {du, dv};
}

double angle_of(const Dir2& d) { return std::atan2(d.dv, d.du); }

double dot(const Dir2& a, const Dir2& b) { return a.du * b.du + a.dv * b.dv; }

}  // namespace

DirectionPair bde_roots(const BdeCoefficients& c, double tol) {
    const double s = std::max({std::fabs(c.A), std::fabs(c.B), std::fabs(c.C)});
    if (s <= tol)
        throw AllZero("bde_roots: all BDE coefficients below tolerance");

    const double disc = c.B * c.B - 4.0 * c.A * c.C;
    const double disc_n = disc / (s * s);
    DirectionPair out;
    if (disc_n < -tol) {
        out.count = 0;
        return out;
    }
    if (disc_n <= tol) {
        out.count = 1;
        out.d1 = std::fabs(c.A) >= std::fabs(c.C) ? canonical(2.0 * c.A, -c.B)
                                                  : canonical(-c.B, 2.0 * c.C);
        return out;
    }
    // two roots of A t^2 + B t + C in homogeneous form (du, dv)
    const double q = -0.5 * (c.B + std::copysign(std::sqrt(disc), c.B));
    Dir2 r1 = canonical(c.A, q);
    Dir2 r2 = canonical(q, c.C);
    if (angle_of(r1) > angle_of(r2)) std::swap(r1, r2);
    out.d1 = r1;
    out.d2 = r2;
    out.count = 2;
    return out;
}

namespace {

// Direction field evaluation with branch continuation; empty when the point
// is unusable (outside, masked, degenerate, or fewer than two roots).
std::optional<Dir2> direction_at(const SurfacePatch& patch, double u, double v,
                                 const Dir2& ref) {
    if (patch.masked_at(u, v)) return std::nullopt;
    BdeCoefficients c;
    try {
        c = bde_coeffs(patch.jet2(u, v));
    } catch (const Error&) {
        return std::nullopt;
    }
    DirectionPair roots;
    try {
        roots = bde_roots(c);
    } catch (const AllZero&) {
        return std::nullopt;
    }
    if (roots.count < 2) return std::nullopt;
    Dir2 d = std::fabs(dot(roots.d1, ref)) >= std::fabs(dot(roots.d2, ref)) ? roots.d1
                                                                            : roots.d2;
    if (dot(d, ref) < 0) {
        d.du = -d.du;
        d.dv = -d.dv;
    }
    return d;
}

double disc_normalized(const SurfacePatch& patch, double u, double v) {
    try {
        const BdeCoefficients c = bde_coeffs(patch.jet2(u, v));
        const double s = std::max({std::fabs(c.A), std::fabs(c.B), std::fabs(c.C)});
        if (s == 0) return 0;
        return (c.B * c.B - 4.0 * c.A * c.C) / (s * s);
    } catch (const Error&) {
        return 0;
    }
}

}  // namespace

PrincipalLine integrate_line(const SurfacePatch& patch, std::pair<double, double> start,
                             int branch, double step, int n_steps) {
    PrincipalLine line;
    line.branch = branch;
    line.step = step;

    DirectionPair roots;
    try {
        roots = bde_roots(bde_coeffs(patch.jet2(start.first, start.second)));
    } catch (const AllZero&) {
        throw BadStart("integrate_line: BDE degenerate at the start point");
    }
    if (roots.count < 2)
        throw BadStart("integrate_line: fewer than two principal directions at start");

    Dir2 dir = branch == 1 ? roots.d1 : roots.d2;  // canonical sign points toward +u
    line.samples.push_back(start);
    double u = start.first, v = start.second;
    line.stop = StopReason::MaxSteps;

    for (int i = 0; i < n_steps; ++i) {
        double h = step;
        int halvings = 0;
        // slow down where the two directions are about to collide
        while (halvings < 8 && disc_normalized(patch, u, v) < h * h) {
            h *= 0.5;
            ++halvings;
        }

        std::optional<Dir2> k1, k2, k3, k4;
        bool ok = false;
        while (true) {
            k1 = direction_at(patch, u, v, dir);
            if (!k1) break;  // halving cannot fix the current point
            k2 = direction_at(patch, u + 0.5 * h * k1->du, v + 0.5 * h * k1->dv, *k1);
            k3 = k2 ? direction_at(patch, u + 0.5 * h * k2->du, v + 0.5 * h * k2->dv, *k2)
                    : std::nullopt;
            k4 = k3 ? direction_at(patch, u + h * k3->du, v + h * k3->dv, *k3)
                    : std::nullopt;
            if (k4) {
                ok = true;
                break;
            }
            if (halvings >= 8) break;
            h *= 0.5;
            ++halvings;
        }
        if (!ok) {
            line.stop = StopReason::Degenerate;
            break;
        }

        const double du = h / 6.0 * (k1->du + 2 * k2->du + 2 * k3->du + k4->du);
        const double dv = h / 6.0 * (k1->dv + 2 * k2->dv + 2 * k3->dv + k4->dv);
        const double nu = u + du, nv = v + dv;
        if (!patch.domain().contains(nu, nv)) {
            line.stop = StopReason::Boundary;
            break;
        }
        if (patch.masked_at(nu, nv)) {
            line.stop = StopReason::MaskedCell;
            break;
        }
        u = nu;
        v = nv;
        line.samples.push_back({u, v});
        const double n = std::hypot(du, dv);
        dir = {du / n, dv / n};
    }

    line.residual_max = polyline_bde_residual(patch, line.samples);
    return line;
}

namespace {

std::vector<double> residuals_against(
    const std::vector<std::pair<double, double>>& pts,
    const std::function<BdeCoefficients(double, double)>& coeffs_at) {
    const std::size_t n = pts.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // second-order tangents: central in the interior, one-sided
        // three-point stencils at the ends
        double tu, tv;
        if (n < 3) {
            tu = pts[n - 1].first - pts[0].first;
            tv = pts[n - 1].second - pts[0].second;
        } else if (i == 0) {
            tu = -3 * pts[0].first + 4 * pts[1].first - pts[2].first;
            tv = -3 * pts[0].second + 4 * pts[1].second - pts[2].second;
        } else if (i + 1 == n) {
            tu = 3 * pts[n - 1].first - 4 * pts[n - 2].first + pts[n - 3].first;
            tv = 3 * pts[n - 1].second - 4 * pts[n - 2].second + pts[n - 3].second;
        } else {
            tu = pts[i + 1].first - pts[i - 1].first;
            tv = pts[i + 1].second - pts[i - 1].second;
        }
        const double t2 = tu * tu + tv * tv;
        if (t2 == 0) continue;
        const BdeCoefficients c = coeffs_at(pts[i].first, pts[i].second);
        const double s = std::max({std::fabs(c.A), std::fabs(c.B), std::fabs(c.C)});
        if (s == 0) continue;
        out[i] = std::fabs(c.A * tv * tv + c.B * tu * tv + c.C * tu * tu) / (s * t2);
    }
    return out;
}

double residual_against(const std::vector<std::pair<double, double>>& pts,
                        const std::function<BdeCoefficients(double, double)>& coeffs_at) {
    double worst = 0;
    for (double r : residuals_against(pts, coeffs_at)) worst = std::max(worst, r);
    return worst;
}

}  // namespace

std::vector<double> polyline_bde_residual_samples(
    const SurfacePatch& patch, const std::vector<std::pair<double, double>>& pts) {
    return residuals_against(pts, [&](double u, double v) {
        return bde_coeffs(patch.jet2(u, v));
    });
}

double polyline_bde_residual(const SurfacePatch& patch,
                             const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0;
    return residual_against(pts, [&](double u, double v) {
        return bde_coeffs(patch.jet2(u, v));
    });
}

double verify_line_preserved(const SurfacePatch& patch, const PrincipalLine& line,
                             double lc_tol) {
    const SurfacePatch inv = invert_patch(patch, lc_tol);
    for (const auto& p : line.samples)
        if (inv.masked_at(p.first, p.second))
            throw MaskedSample("verify_line_preserved: line sample masked under inversion");
    if (line.samples.size() < 2) return 0;
    return residual_against(line.samples, [&](double u, double v) {
        return bde_coeffs(inv.jet2(u, v));
    });
}

}  // namespace lorentz
