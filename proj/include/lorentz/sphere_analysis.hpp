#pragma once

#include <utility>
#include <vector>

#include "lorentz/surface.hpp"
#include "lorentz/vec3.hpp"

namespace lorentz {

// Euclidean sphere |p - (a,b,c)| = r regarded as a surface in R^3_1.
struct SphereSpec {
    double a = 0, b = 0, c = 0;
    double r = 1;

    Vec3 center() const { return {a, b, c}; }
};

// Euclidean distance from p0 to the light cone: |sqrt(a^2+b^2) - |c|| / sqrt(2).
double dist_to_lightcone(Vec3 p0);

// The inverted sphere is homeomorphic to the sphere (closed) iff the sphere
// misses the light cone: (sqrt(a^2+b^2) - |c|)^2 > 2 r^2.
bool is_closed_after_inversion(const SphereSpec& s);

// The two factors whose zero set is the parabolic set of the inverted
// sphere, in the standard chart (u around the timelike axis, v from the
// north pole). f does not depend on u.
double parabolic_f(double u, double v, const SphereSpec& s);
double parabolic_g(double u, double v, const SphereSpec& s);

// Envelopes of g over u: g_min(v) <= g(u,v) <= g_max(v).
std::pair<double, double> g_envelopes(double v, const SphereSpec& s);

// Real roots of f as a quadratic in cos v, clipped to [-1, 1].
std::vector<double> f_cosv_roots(const SphereSpec& s);

// Closed-form ovaloid criterion for the inverted sphere:
// sqrt(a^2+b^2) > 2r + sqrt(c^2+r^2)  or  |c| > 2r + sqrt(a^2+b^2+r^2).
bool is_ovaloid_inverted_sphere(const SphereSpec& s);

// Sign census of K_bar over an nu x nv cell-center grid. The parabolic set
// is declared empty when no unmasked sample has the opposite strict sign of
// another and none vanishes exactly. Witnesses collect parameter points of
// the minority sign (or of vanishing K_bar), up to max_witnesses.
struct ParabolicCensus {
    bool empty = false;
    double min_abs = 0;       // min |K_bar| over unmasked cells
    double max_abs = 0;
    int n_positive = 0;
    int n_negative = 0;
    int n_masked = 0;
    std::vector<std::pair<double, double>> witnesses;
};

ParabolicCensus parabolic_census(const SurfacePatch& patch, int nu, int nv,
                                 int max_witnesses = 8);

inline bool parabolic_empty_bruteforce(const SurfacePatch& patch, int nu, int nv) {
    return parabolic_census(patch, nu, nv).empty;
}

// Combined report for the inverted sphere, used by the CLI.
struct OvaloidCheck {
    bool is_closed = false;
    bool parabolic_empty = false;
    bool is_ovaloid = false;
    std::vector<std::pair<double, double>> witnesses;  // (u, v) parabolic points
};

// Closed-form check of the sphere spec; witnesses come from the f/g zero
// sets sampled on a grid_n x grid_n grid (no jet evaluation involved).
OvaloidCheck check_inverted_sphere(const SphereSpec& s, int grid_n = 128);

// Radius R such that, at the sampled resolution, every tangent Euclidean
// sphere S_p(R) (center p + R N_E(p), inward Euclidean normal) contains the
// rest of the sampled surface: R = sup_p d_max(p)^2 / (2 min_q cos
// theta(q)) + 1. Samples an n x n parameter grid. Throws NonconvexWitness
// when some chord makes a non-acute angle with the inward normal.
double enclosing_radius(const SurfacePatch& patch, int sample_n);

// Doubling search for a spacelike translation t = (t0, 0, 0) such that
// every translated tangent sphere S_p(R) + t inverts to an ovaloid by the
// closed-form criterion and the translated surface clears the light cone at
// the sampled resolution. Throws SearchExhausted past 2^30 times the
// surface scale.
Vec3 translation_search(const SurfacePatch& patch, int sample_n);

}  // namespace lorentz
