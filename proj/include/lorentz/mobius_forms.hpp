#pragma once

#include "lorentz/forms.hpp"
#include "lorentz/surface.hpp"

namespace lorentz {

// Closed-form transport of fundamental forms under the Mobius inversion.
//
// First forms divide by rho^2 with rho = <phi, phi>. For the bar-scaled
// second forms, with the determinant convention for the cross product the
// inverted chart satisfies, exactly,
//
//   (lbar_M, mbar_M, nbar_M) = -(lbar + a E, mbar + a F, nbar + a G) / rho^3,
//   a = 2 det(xu, xv, phi) / rho = 2 <xu x xv, phi~>,
//
// where phi~ = phi / rho is the inverted position. Consequently the BDE
// coefficients of the inverted chart are -1/rho^5 times the source ones;
// the two equations have identical root sets at every point.

// (E, F, G) / rho^2. Throws ZeroRho.
inline void pushforward_first(double E, double F, double G, double rho,
                              double& E_M, double& F_M, double& G_M) {
    if (rho == 0.0) throw ZeroRho("pushforward_first: rho = 0");
    const double r2 = rho * rho;
    E_M = E / r2;
    F_M = F / r2;
    G_M = G / r2;
}

// (lbar + alpha E, ...) / rho^3 for a caller-supplied alpha. Throws ZeroRho.
inline void pushforward_second(double lbar, double mbar, double nbar,
                               double E, double F, double G,
                               double alpha, double rho,
                               double& lbar_M, double& mbar_M, double& nbar_M) {
    if (rho == 0.0) throw ZeroRho("pushforward_second: rho = 0");
    const double r3 = rho * rho * rho;
    lbar_M = (lbar + alpha * E) / r3;
    mbar_M = (mbar + alpha * F) / r3;
    nbar_M = (nbar + alpha * G) / r3;
}

// Orientation factor carried by the bar coefficients under inversion with
// the determinant cross-product convention.
inline constexpr double kSecondFormOrientation = -1.0;

// alpha for the inverted chart's bar coefficients, 2 det(xu, xv, x) / rho.
inline double pushforward_alpha(const Jet2& j, double rho) {
    if (rho == 0.0) throw ZeroRho("pushforward_alpha: rho = 0");
    return 2.0 * minkowski_dot(lorentz_cross(j.xu, j.xv), j.x) / rho;
}

// Full predicted bundle for the inverted chart from the source jet alone.
FormBundle pushforward_bundle(const Jet2& j, double lc_tol = 1e-9);

struct PushforwardReport {
    double rho = 0;            // <phi, phi> at the point
    double alpha = 0;          // multiplier actually used in the prediction
    FormBundle predicted;      // closed-form transport of the source bundle
    FormBundle observed;       // bundle of the inverted chart's own jets
    double max_rel_err = 0;    // worst of the six coefficients, normalized
                               // by the largest coefficient magnitude
};

// Compares the closed forms against direct jet evaluation of the inverted
// patch at one parameter point. Throws NearLightCone when |rho| <= lc_tol
// and OnLd when the source metric is degenerate there (alpha needs the
// normal direction to be meaningful; the check itself uses determinants).
PushforwardReport verify_pushforward(const SurfacePatch& patch, double u, double v,
                                     double lc_tol = 1e-9);

// Scalar lambda with (A_M, B_M, C_M) = lambda (A, B, C); equals -1/rho^5.
// Throws DegeneratePoint when all source coefficients are below
// 1e-12 * s^3 with s the largest jet-vector magnitude.
double bde_scaling_factor(const SurfacePatch& patch, double u, double v,
                          double lc_tol = 1e-9);

}  // namespace lorentz
