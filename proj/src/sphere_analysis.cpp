#include "lorentz/sphere_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

#include "lorentz/forms.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double dist_to_lightcone(Vec3 p0) {
    const double rad = std::hypot(p0.x0, p0.x1);
    return std::fabs(rad - std::fabs(p0.x2)) / std::sqrt(2.0);
}

bool is_closed_after_inversion(const SphereSpec& s) {
    const double d = std::hypot(s.a, s.b) - std::fabs(s.c);
    return d * d > 2.0 * s.r * s.r;
}

double parabolic_f(double /*u*/, double v, const SphereSpec& s) {
    const double cv = std::cos(v);
    return -s.a * s.a - s.b * s.b + s.c * s.c + s.r * s.r + 4.0 * s.c * s.r * cv +
           2.0 * s.r * s.r * cv * cv;
}

double parabolic_g(double u, double v, const SphereSpec& s) {
    const double cv = std::cos(v), sv = std::sin(v);
    const double h = s.a * std::cos(u) + s.b * std::sin(u);
    return -s.a * s.a - s.b * s.b + s.c * s.c + 4.0 * s.c * s.r * cv * cv * cv +
           3.0 * s.r * s.r * std::cos(2.0 * v) - 4.0 * s.r * h * sv * sv * sv;
}

std::pair<double, double> g_envelopes(double v, const SphereSpec& s) {
    const double cv = std::cos(v), sv = std::sin(v);
    const double common = -s.a * s.a - s.b * s.b + s.c * s.c +
                          4.0 * s.c * s.r * cv * cv * cv +
                          3.0 * s.r * s.r * std::cos(2.0 * v);
    const double swing = 4.0 * s.r * std::hypot(s.a, s.b) * sv * sv * sv;
    return {common - swing, common + swing};
}

std::vector<double> f_cosv_roots(const SphereSpec& s) {
    // f = 2 r^2 t^2 + 4 c r t + (c^2 - a^2 - b^2 + r^2), t = cos v
    const double disc = s.a * s.a + s.b * s.b + s.c * s.c - s.r * s.r;
    std::vector<double> roots;
    if (disc < 0) return roots;
    const double sq = std::sqrt(2.0) * std::sqrt(disc);
    for (double sign : {-1.0, 1.0}) {
        const double t = (-2.0 * s.c + sign * sq) / (2.0 * s.r);
        if (t >= -1.0 && t <= 1.0) roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_ovaloid_inverted_sphere(const SphereSpec& s) {
    const double rad = std::hypot(s.a, s.b);
    return rad > 2.0 * s.r + std::hypot(s.c, s.r) ||
           std::fabs(s.c) > 2.0 * s.r + std::sqrt(s.a * s.a + s.b * s.b + s.r * s.r);
}

ParabolicCensus parabolic_census(const SurfacePatch& patch, int nu, int nv,
                                 int max_witnesses) {
    ParabolicCensus census;
    census.min_abs = std::numeric_limits<double>::infinity();

    const Domain& dom = patch.domain();
    const double du = dom.u_extent() / nu, dv = dom.v_extent() / nv;

    struct RowStat {
        double min_abs = std::numeric_limits<double>::infinity();
        double max_abs = 0;
        int pos = 0, neg = 0, masked = 0;
        std::vector<std::pair<double, double>> zeros;  // |K| == 0 exactly
        std::vector<std::pair<double, double>> pos_pts, neg_pts;
    };
    std::vector<RowStat> rows(static_cast<std::size_t>(nu));

    parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
        RowStat& rs = rows[i];
        const double u = dom.u_min + (static_cast<double>(i) + 0.5) * du;
        for (int k = 0; k < nv; ++k) {
            const double v = dom.v_min + (k + 0.5) * dv;
            if (patch.masked_at(u, v)) {
                ++rs.masked;
                continue;
            }
            double kb;
            try {
                kb = gauss_kbar(patch.jet2(u, v));
            } catch (const Error&) {
                ++rs.masked;
                continue;
            }
            const double a = std::fabs(kb);
            rs.min_abs = std::min(rs.min_abs, a);
            rs.max_abs = std::max(rs.max_abs, a);
            if (kb > 0) {
                ++rs.pos;
                if (rs.pos_pts.size() < 4) rs.pos_pts.push_back({u, v});
            } else if (kb < 0) {
                ++rs.neg;
                if (rs.neg_pts.size() < 4) rs.neg_pts.push_back({u, v});
            } else if (rs.zeros.size() < 4) {
                rs.zeros.push_back({u, v});
            }
        }
    });

    for (const RowStat& rs : rows) {
        census.min_abs = std::min(census.min_abs, rs.min_abs);
        census.max_abs = std::max(census.max_abs, rs.max_abs);
        census.n_positive += rs.pos;
        census.n_negative += rs.neg;
        census.n_masked += rs.masked;
    }
    const bool sign_change = census.n_positive > 0 && census.n_negative > 0;
    const bool has_zero = census.min_abs == 0.0;
    census.empty = !sign_change && !has_zero &&
                   (census.n_positive + census.n_negative) > 0;

    if (!census.empty) {
        // witnesses: exact zeros first, then the minority sign
        const bool pos_minority = census.n_positive <= census.n_negative;
        for (const RowStat& rs : rows) {
            for (const auto& p : rs.zeros)
                if (static_cast<int>(census.witnesses.size()) < max_witnesses)
                    census.witnesses.push_back(p);
            const auto& minority = pos_minority ? rs.pos_pts : rs.neg_pts;
            for (const auto& p : minority)
                if (static_cast<int>(census.witnesses.size()) < max_witnesses)
                    census.witnesses.push_back(p);
        }
    }
    return census;
}

OvaloidCheck check_inverted_sphere(const SphereSpec& s, int grid_n) {
    OvaloidCheck check;
    check.is_closed = is_closed_after_inversion(s);
    check.is_ovaloid = is_ovaloid_inverted_sphere(s);

    // parabolic emptiness from the closed forms: f is u-independent, so its
    // roots give whole parabolic circles; g needs the 2-d scan
    const auto f_roots = f_cosv_roots(s);
    bool f_hits = false;
    for (double t : f_roots) f_hits = f_hits || (t > -1.0 && t < 1.0);
    bool g_hits = false;
    double prev_g = 0;
    for (int i = 0; i <= grid_n && !g_hits; ++i) {
        const double v = (i + 0.5) * kPi / (grid_n + 1);
        const auto [gmin, gmax] = g_envelopes(v, s);
        if (gmin <= 0.0 && gmax >= 0.0) g_hits = true;
        if (i > 0 && ((prev_g > 0) != (gmin > 0))) g_hits = true;
        prev_g = gmin;
    }
    check.parabolic_empty = !f_hits && !g_hits;

    if (!check.parabolic_empty) {
        for (double t : f_roots)
            if (t > -1.0 && t < 1.0 && check.witnesses.size() < 4)
                check.witnesses.push_back({kPi, std::acos(t)});
        // sample a zero of g along the u direction where the envelope brackets it
        for (int i = 1; i < grid_n && check.witnesses.size() < 8; ++i) {
            const double v = i * kPi / grid_n;
            double prev = parabolic_g(0.0, v, s);
            for (int k = 1; k <= grid_n; ++k) {
                const double u = k * 2.0 * kPi / grid_n;
                const double cur = parabolic_g(u, v, s);
                if ((prev > 0) != (cur > 0)) {
                    check.witnesses.push_back({u, v});
                    break;
                }
                prev = cur;
            }
        }
    }
    return check;
}

namespace {

struct SampledSurface {
    std::vector<Vec3> points;
    std::vector<Vec3> inward_normals;  // unit, Euclidean
};

SampledSurface sample_with_normals(const SurfacePatch& patch, int n) {
    SampledSurface s;
    const Domain& dom = patch.domain();
    s.points.reserve(static_cast<std::size_t>(n) * n);
    std::vector<Vec3> raw_normals;
    for (int i = 0; i < n; ++i) {
        const double u = dom.u_min + (i + 0.5) * dom.u_extent() / n;
        for (int k = 0; k < n; ++k) {
            const double v = dom.v_min + (k + 0.5) * dom.v_extent() / n;
            if (patch.masked_at(u, v)) continue;
            const Jet2 j = patch.jet2(u, v);
            s.points.push_back(j.x);
            raw_normals.push_back(euclid_cross(j.xu, j.xv));
        }
    }
    Vec3 centroid{};
    for (const Vec3& p : s.points) centroid = centroid + p;
    centroid = centroid / static_cast<double>(s.points.size());

    s.inward_normals.reserve(raw_normals.size());
    for (std::size_t i = 0; i < raw_normals.size(); ++i) {
        Vec3 nrm = raw_normals[i];
        const double len = euclid_norm(nrm);
        const Vec3 to_center = centroid - s.points[i];
        if (len == 0.0 ||
            std::fabs(euclid_dot(nrm, to_center)) <= 1e-12 * len * euclid_norm(to_center))
            throw NonconvexWitness("enclosing_radius: cannot orient an inward normal");
        if (euclid_dot(nrm, to_center) < 0) nrm = -nrm;
        s.inward_normals.push_back(nrm / len);
    }
    return s;
}

}  // namespace

double enclosing_radius(const SurfacePatch& patch, int sample_n) {
    const SampledSurface s = sample_with_normals(patch, sample_n);
    const std::size_t n = s.points.size();

    double sup = 0;
    std::mutex mu;
    std::atomic<bool> nonconvex{false};
    parallel_for(n, [&](std::size_t i) {
        if (nonconvex.load()) return;
        const Vec3 p = s.points[i];
        const Vec3 nrm = s.inward_normals[i];
        double d_max = 0;
        double cos_min = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const Vec3 chord = s.points[k] - p;
            const double d = euclid_norm(chord);
            if (d <= 1e-12) continue;
            d_max = std::max(d_max, d);
            cos_min = std::min(cos_min, euclid_dot(chord, nrm) / d);
        }
        if (cos_min <= 1e-9) {
            nonconvex.store(true);
            return;
        }
        const double rp = d_max * d_max / (2.0 * cos_min);
        std::lock_guard<std::mutex> lock(mu);
        sup = std::max(sup, rp);
    });
    if (nonconvex.load())
        throw NonconvexWitness("enclosing_radius: chord at right or obtuse angle "
                               "to the inward normal");
    return sup + 1.0;
}

Vec3 translation_search(const SurfacePatch& patch, int sample_n) {
    const double R = enclosing_radius(patch, sample_n);
    const SampledSurface s = sample_with_normals(patch, sample_n);

    double scale = 1.0;
    for (const Vec3& p : s.points) scale = std::max(scale, euclid_norm(p));

    auto admissible = [&](double t0) {
        const Vec3 t{t0, 0.0, 0.0};
        // translated surface must clear the light cone at sample resolution
        bool pos = false, neg = false;
        for (const Vec3& p : s.points) {
            const double rho = minkowski_dot(p + t, p + t);
            if (rho > 0) pos = true;
            else if (rho < 0) neg = true;
            else return false;
            if (pos && neg) return false;
        }
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const Vec3 q = s.points[i] + R * s.inward_normals[i] + t;
            if (!is_ovaloid_inverted_sphere({q.x0, q.x1, q.x2, R})) return false;
        }
        return true;
    };

    if (admissible(0.0)) return {0.0, 0.0, 0.0};
    for (double t0 = scale; t0 <= std::ldexp(scale, 30); t0 *= 2.0)
        if (admissible(t0)) return {t0, 0.0, 0.0};
    throw SearchExhausted("translation_search: no admissible translation within budget");
}

}  // namespace lorentz
