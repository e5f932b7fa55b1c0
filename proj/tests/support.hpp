// Shared helpers for the test suites: deterministic RNG, independent
// finite-difference and shape-operator oracles, and parameter-space curve
// distances. Everything here is oracle-side code: it must not call the
// library paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "lorentz/loci.hpp"
#include "lorentz/surface.hpp"
#include "lorentz/vec3.hpp"

namespace testsup {

using lorentz::Jet2;
using lorentz::LocusCurve;
using lorentz::SurfacePatch;
using lorentz::Vec3;

inline std::mt19937_64 rng(std::uint64_t seed = 20240915ull) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Vec3 random_vec(std::mt19937_64& g, double lo = -2.0, double hi = 2.0) {
    return {uniform(g, lo, hi), uniform(g, lo, hi), uniform(g, lo, hi)};
}

inline Jet2 random_jet(std::mt19937_64& g, double lo = -2.0, double hi = 2.0) {
    Jet2 j;
    j.x = random_vec(g, lo, hi);
    j.xu = random_vec(g, lo, hi);
    j.xv = random_vec(g, lo, hi);
    j.xuu = random_vec(g, lo, hi);
    j.xuv = random_vec(g, lo, hi);
    j.xvv = random_vec(g, lo, hi);
    return j;
}

// 3x3 determinant by cofactor expansion; the reference for every
// bar-coefficient check.
inline double det_oracle(Vec3 a, Vec3 b, Vec3 c) {
    return a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - a.x1 * (b.x0 * c.x2 - b.x2 * c.x0) +
           a.x2 * (b.x0 * c.x1 - b.x1 * c.x0);
}

// Central-difference 2-jet of a raw position map with an explicit step.
inline Jet2 fd_jet(const std::function<Vec3(double, double)>& f, double u, double v,
                   double h) {
    Jet2 j;
    const Vec3 c = f(u, v);
    const Vec3 pu = f(u + h, v), mu = f(u - h, v);
    const Vec3 pv = f(u, v + h), mv = f(u, v - h);
    j.x = c;
    j.xu = (pu - mu) / (2 * h);
    j.xv = (pv - mv) / (2 * h);
    j.xuu = (pu - 2 * c + mu) / (h * h);
    j.xvv = (pv - 2 * c + mv) / (h * h);
    j.xuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) /
            (4 * h * h);
    return j;
}

inline double max_abs_component(Vec3 v) {
    return std::max({std::fabs(v.x0), std::fabs(v.x1), std::fabs(v.x2)});
}

// Weingarten-map oracle: finite differences of the unit normal, expressed in
// the tangent basis by least squares. Returns the 2x2 shape-operator matrix
// S with dN = -(xu, xv) S. Independent of the bar-coefficient path.
struct ShapeOperator {
    double s11, s12, s21, s22;
    double det() const { return s11 * s22 - s12 * s21; }
    double trace() const { return s11 + s22; }
    // eigen-directions in parameter space when the eigenvalues are real
    int eigen_dirs(std::pair<double, double>& d1, std::pair<double, double>& d2) const {
        const double tr = trace(), dt = det();
        const double disc = tr * tr - 4 * dt;
        if (disc < 0) return 0;
        const double sq = std::sqrt(disc);
        int count = 0;
        for (double lam : {0.5 * (tr - sq), 0.5 * (tr + sq)}) {
            // rows of (S - lam I); pick the more robust kernel vector
            const double a = s11 - lam, b = s12, c = s21, d = s22 - lam;
            std::pair<double, double> dir;
            if (std::hypot(a, b) > std::hypot(c, d)) dir = {-b, a};
            else dir = {-d, c};
            const double n = std::hypot(dir.first, dir.second);
            if (n == 0) continue;
            dir.first /= n;
            dir.second /= n;
            (count == 0 ? d1 : d2) = dir;
            ++count;
        }
        return count;
    }
};

inline ShapeOperator shape_operator_fd(const SurfacePatch& patch, double u, double v,
                                       double h = 1e-5) {
    auto normal_at = [&](double uu, double vv) {
        const Jet2 j = patch.jet2(uu, vv);
        const Vec3 w = lorentz::lorentz_cross(j.xu, j.xv);
        return w / lorentz::minkowski_norm(w);
    };
    const Vec3 Nu = (normal_at(u + h, v) - normal_at(u - h, v)) / (2 * h);
    const Vec3 Nv = (normal_at(u, v + h) - normal_at(u, v - h)) / (2 * h);
    const Jet2 j = patch.jet2(u, v);

    // solve -Nv = s.. with the Minkowski Gram matrix of (xu, xv)
    const double E = lorentz::minkowski_dot(j.xu, j.xu);
    const double F = lorentz::minkowski_dot(j.xu, j.xv);
    const double G = lorentz::minkowski_dot(j.xv, j.xv);
    const double det = E * G - F * F;
    auto solve = [&](Vec3 rhs, double& a, double& b) {
        const double r1 = -lorentz::minkowski_dot(rhs, j.xu);
        const double r2 = -lorentz::minkowski_dot(rhs, j.xv);
        a = (G * r1 - F * r2) / det;
        b = (E * r2 - F * r1) / det;
    };
    ShapeOperator s{};
    solve(Nu, s.s11, s.s21);
    solve(Nv, s.s12, s.s22);
    return s;
}

// Brute-force distance to the light cone: the cone is the union of the
// lines through the origin with direction (cos s, sin s, 1)/sqrt(2);
// minimize the point-line distance over a dense grid, then refine by
// golden-section.
inline double lc_distance_oracle(Vec3 p) {
    constexpr double kTwoPi = 6.283185307179586;
    auto dist = [&](double s) {
        const Vec3 w{std::cos(s) / std::sqrt(2.0), std::sin(s) / std::sqrt(2.0),
                     1.0 / std::sqrt(2.0)};
        const double t = lorentz::euclid_dot(p, w);
        return lorentz::euclid_norm(p - t * w);
    };
    double best_s = 0, best = dist(0);
    const int n = 20000;
    for (int i = 1; i < n; ++i) {
        const double s = i * kTwoPi / n;
        const double d = dist(s);
        if (d < best) {
            best = d;
            best_s = s;
        }
    }
    double lo = best_s - kTwoPi / n, hi = best_s + kTwoPi / n;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it) {
        const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        if (dist(a) < dist(b)) hi = b;
        else lo = a;
    }
    return dist(0.5 * (lo + hi));
}

// Directed then symmetrized Hausdorff distance between curve sets, measured
// in grid-cell units (scaled infinity metric). Empty vs empty is 0; empty vs
// nonempty is infinite.
inline double hausdorff_cells(const std::vector<LocusCurve>& a,
                              const std::vector<LocusCurve>& b, double du, double dv) {
    auto points_of = [](const std::vector<LocusCurve>& cs) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& c : cs) pts.insert(pts.end(), c.points.begin(), c.points.end());
        return pts;
    };
    const auto pa = points_of(a), pb = points_of(b);
    if (pa.empty() && pb.empty()) return 0.0;
    if (pa.empty() || pb.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [&](const auto& from, const auto& to) {
        double worst = 0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to)
                best = std::min(best, std::max(std::fabs(p.first - q.first) / du,
                                               std::fabs(p.second - q.second) / dv));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(pa, pb), directed(pb, pa));
}

}  // namespace testsup
