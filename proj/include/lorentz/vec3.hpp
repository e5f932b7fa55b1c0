#pragma once

#include <cmath>
#include <string>

#include "lorentz/errors.hpp"

namespace lorentz {

// Point/vector of the Minkowski 3-space R^3_1. Coordinates (x0, x1, x2);
// x2 is the timelike one: <u,v> = u0 v0 + u1 v1 - u2 v2.
struct Vec3 {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2}; }
inline Vec3 operator-(Vec3 a) { return {-a.x0, -a.x1, -a.x2}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x0, s * a.x1, s * a.x2}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x0 / s, a.x1 / s, a.x2 / s}; }

inline double minkowski_dot(Vec3 u, Vec3 v) {
    return u.x0 * v.x0 + u.x1 * v.x1 - u.x2 * v.x2;
}

// ||u|| = sqrt(|<u,u>|); zero exactly on lightlike vectors and the origin.
inline double minkowski_norm(Vec3 u) {
    return std::sqrt(std::fabs(minkowski_dot(u, u)));
}

inline double euclid_dot(Vec3 u, Vec3 v) {
    return u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2;
}

inline double euclid_norm(Vec3 u) { return std::sqrt(euclid_dot(u, u)); }

inline Vec3 euclid_cross(Vec3 u, Vec3 v) {
    return {u.x1 * v.x2 - u.x2 * v.x1,
            u.x2 * v.x0 - u.x0 * v.x2,
            u.x0 * v.x1 - u.x1 * v.x0};
}

// Lorentzian cross product, fixed by <u x v, w> = det(u, v, w) for all w.
// In coordinates: flip the timelike component of the Euclidean cross product.
inline Vec3 lorentz_cross(Vec3 u, Vec3 v) {
    const Vec3 c = euclid_cross(u, v);
    return {c.x0, c.x1, -c.x2};
}

inline double det3(Vec3 a, Vec3 b, Vec3 c) {
    return euclid_dot(euclid_cross(a, b), c);
}

enum class CausalType { Spacelike, Timelike, Lightlike };

inline CausalType causal_type(Vec3 u, double tol = 1e-12) {
    const double s = minkowski_dot(u, u);
    if (std::fabs(s) <= tol) return CausalType::Lightlike;
    return s > 0.0 ? CausalType::Spacelike : CausalType::Timelike;
}

// The three open regions cut out by the light cone: R1 outside the cone,
// R2 the upper interior (z > 0), R3 the lower interior.
enum class Region { R1, R2, R3, LightCone };

inline Region region_of(Vec3 p, double tol = 1e-12) {
    const double s = minkowski_dot(p, p);
    if (std::fabs(s) <= tol) return Region::LightCone;
    if (s > 0.0) return Region::R1;
    return p.x2 > 0.0 ? Region::R2 : Region::R3;
}

// <p,p> evaluated with compensated products and sums, so the result is
// accurate relative to itself even when the naive sum cancels near the
// light cone.
inline double minkowski_pairing_compensated(Vec3 p) {
    const double p0 = p.x0 * p.x0, e0 = std::fma(p.x0, p.x0, -p0);
    const double p1 = p.x1 * p.x1, e1 = std::fma(p.x1, p.x1, -p1);
    const double p2 = p.x2 * p.x2, e2 = std::fma(p.x2, p.x2, -p2);
    // TwoSum(p0, p1)
    double s = p0 + p1;
    double bb = s - p0;
    const double t01 = (p0 - (s - bb)) + (p1 - bb);
    // TwoSum(s, -p2)
    double r = s - p2;
    bb = r - s;
    const double t2 = (s - (r - bb)) + (-p2 - bb);
    return r + (t01 + t2 + e0 + e1 - e2);
}

// Pointwise Mobius inversion p -> p / <p,p>. Undefined on the light cone;
// the default tolerance is absolute on |<p,p>|. The pairing is evaluated
// in compensated arithmetic so that the involution round-trips to within a
// few ulps even just off the cone.
inline Vec3 mobius_point(Vec3 p, double tol = 1e-9) {
    const double s = minkowski_pairing_compensated(p);
    if (std::fabs(s) <= tol)
        throw NearLightCone("mobius_point: |<p,p>| = " + std::to_string(std::fabs(s)) +
                            " below tolerance");
    return p / s;
}

}  // namespace lorentz
