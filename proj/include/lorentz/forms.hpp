#pragma once

#include <algorithm>
#include <cmath>

#include "lorentz/surface.hpp"
#include "lorentz/vec3.hpp"

namespace lorentz {

// First fundamental form coefficients and the degeneracy indicator
// delta = F^2 - EG (> 0 Lorentzian, < 0 Riemannian, = 0 on the LD).
struct FirstForms {
    double E, F, G;
    double delta;
};

// Second fundamental form coefficients scaled by the unnormalized normal:
// lbar = <xu x xv, xuu> = det(xu, xv, xuu), etc. Defined across the LD.
struct SecondFormsBar {
    double lbar, mbar, nbar;
};

// Everything the locus and pushforward machinery needs at one point.
struct FormBundle {
    double E = 0, F = 0, G = 0;
    double lbar = 0, mbar = 0, nbar = 0;
    double delta = 0;     // F^2 - EG
    double kbar = 0;      // lbar nbar - mbar^2; zero set = extended parabolic set
    double lpl_disc = 0;  // BDE discriminant; zero set = LPL
};

// Coefficients of the principal-curvature BDE
//   A dv^2 + B du dv + C du^2 = 0.
struct BdeCoefficients {
    double A, B, C;
};

inline FirstForms first_forms(const Jet2& j) {
    FirstForms f;
    f.E = minkowski_dot(j.xu, j.xu);
    f.F = minkowski_dot(j.xu, j.xv);
    f.G = minkowski_dot(j.xv, j.xv);
    f.delta = f.F * f.F - f.E * f.G;
    return f;
}

inline SecondFormsBar second_forms_bar(const Jet2& j) {
    const Vec3 w = lorentz_cross(j.xu, j.xv);
    return {minkowski_dot(w, j.xuu), minkowski_dot(w, j.xuv), minkowski_dot(w, j.xvv)};
}

// Extended Gaussian curvature K_bar = lbar nbar - mbar^2. Its sign does not
// depend on the metric (both factors are plain determinants).
inline double gauss_kbar(const Jet2& j) {
    const SecondFormsBar s = second_forms_bar(j);
    return s.lbar * s.nbar - s.mbar * s.mbar;
}

inline BdeCoefficients bde_coeffs(const Jet2& j) {
    const FirstForms f = first_forms(j);
    const SecondFormsBar s = second_forms_bar(j);
    return {f.G * s.mbar - f.F * s.nbar,
            f.G * s.lbar - f.E * s.nbar,
            f.F * s.lbar - f.E * s.mbar};
}

inline BdeCoefficients bde_coeffs(const FormBundle& b) {
    return {b.G * b.mbar - b.F * b.nbar,
            b.G * b.lbar - b.E * b.nbar,
            b.F * b.lbar - b.E * b.mbar};
}

// BDE discriminant delta-tilde = B^2 - 4AC. Positive where two distinct
// principal directions exist, zero on the LPL.
inline double lpl_discriminant(const Jet2& j) {
    const BdeCoefficients c = bde_coeffs(j);
    return c.B * c.B - 4.0 * c.A * c.C;
}

inline FormBundle form_bundle(const Jet2& j) {
    FormBundle b;
    const FirstForms f = first_forms(j);
    const SecondFormsBar s = second_forms_bar(j);
    b.E = f.E;
    b.F = f.F;
    b.G = f.G;
    b.delta = f.delta;
    b.lbar = s.lbar;
    b.mbar = s.mbar;
    b.nbar = s.nbar;
    b.kbar = s.lbar * s.nbar - s.mbar * s.mbar;
    const BdeCoefficients c = bde_coeffs(b);
    b.lpl_disc = c.B * c.B - 4.0 * c.A * c.C;
    return b;
}

// Gaussian curvature K = (ln - m^2)/(EG - F^2), computed off the LD as
// K_bar / ((EG - F^2) ||xu x xv||^2). The relative tolerance is taken
// against max(|E|,|F|,|G|)^2.
inline double gauss_K(const Jet2& j, double tol = 1e-10) {
    const FirstForms f = first_forms(j);
    const double scale = std::max({std::fabs(f.E), std::fabs(f.F), std::fabs(f.G)});
    if (std::fabs(f.delta) <= tol * scale * scale)
        throw OnLd("gauss_K: metric degenerate at this point");
    const Vec3 w = lorentz_cross(j.xu, j.xv);
    const double w2 = std::fabs(minkowski_dot(w, w));
    return gauss_kbar(j) / (-f.delta * w2);
}

// Unit normal N = xu x xv / ||xu x xv||; <N,N> = -1 on Riemannian points,
// +1 on Lorentzian points. Fails on the LD where the norm vanishes.
inline Vec3 unit_normal(const Jet2& j, double tol = 1e-10) {
    const Vec3 w = lorentz_cross(j.xu, j.xv);
    const double n = minkowski_norm(w);
    const double scale = std::max({euclid_norm(j.xu), euclid_norm(j.xv), 1e-300});
    if (n <= tol * scale * scale)
        throw OnLd("unit_normal: ||xu x xv|| below tolerance");
    return w / n;
}

}  // namespace lorentz
