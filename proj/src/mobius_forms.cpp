#include "lorentz/mobius_forms.hpp"

#include <algorithm>
#include <cmath>

namespace lorentz {

FormBundle pushforward_bundle(const Jet2& j, double lc_tol) {
    const double rho = minkowski_dot(j.x, j.x);
    if (std::fabs(rho) <= lc_tol)
        throw NearLightCone("pushforward_bundle: point too close to the light cone");

    const FirstForms f = first_forms(j);
    const SecondFormsBar s = second_forms_bar(j);
    const double alpha = pushforward_alpha(j, rho);

    FormBundle b;
    pushforward_first(f.E, f.F, f.G, rho, b.E, b.F, b.G);
    double l, m, n;
    pushforward_second(s.lbar, s.mbar, s.nbar, f.E, f.F, f.G, alpha, rho, l, m, n);
    b.lbar = kSecondFormOrientation * l;
    b.mbar = kSecondFormOrientation * m;
    b.nbar = kSecondFormOrientation * n;
    b.delta = b.F * b.F - b.E * b.G;
    b.kbar = b.lbar * b.nbar - b.mbar * b.mbar;
    const BdeCoefficients c = bde_coeffs(b);
    b.lpl_disc = c.B * c.B - 4.0 * c.A * c.C;
    return b;
}

namespace {

double bundle_scale(const FormBundle& b) {
    return std::max({std::fabs(b.E), std::fabs(b.F), std::fabs(b.G),
                     std::fabs(b.lbar), std::fabs(b.mbar), std::fabs(b.nbar)});
}

}  // namespace

PushforwardReport verify_pushforward(const SurfacePatch& patch, double u, double v,
                                     double lc_tol) {
    const Jet2 j = patch.jet2(u, v);
    const FirstForms f = first_forms(j);
    const double fscale = std::max({std::fabs(f.E), std::fabs(f.F), std::fabs(f.G)});
    if (std::fabs(f.delta) <= 1e-10 * fscale * fscale)
        throw OnLd("verify_pushforward: source metric degenerate at this point");

    PushforwardReport rep;
    rep.rho = minkowski_dot(j.x, j.x);
    if (std::fabs(rep.rho) <= lc_tol)
        throw NearLightCone("verify_pushforward: point too close to the light cone");
    rep.alpha = pushforward_alpha(j, rep.rho);
    rep.predicted = pushforward_bundle(j, lc_tol);
    rep.observed = form_bundle(invert_jet(j, lc_tol));

    const double scale =
        std::max({bundle_scale(rep.predicted), bundle_scale(rep.observed), 1e-300});
    const double errs[6] = {
        std::fabs(rep.predicted.E - rep.observed.E),
        std::fabs(rep.predicted.F - rep.observed.F),
        std::fabs(rep.predicted.G - rep.observed.G),
        std::fabs(rep.predicted.lbar - rep.observed.lbar),
        std::fabs(rep.predicted.mbar - rep.observed.mbar),
        std::fabs(rep.predicted.nbar - rep.observed.nbar)};
    rep.max_rel_err = *std::max_element(errs, errs + 6) / scale;
    return rep;
}

double bde_scaling_factor(const SurfacePatch& patch, double u, double v, double lc_tol) {
    const Jet2 j = patch.jet2(u, v);
    const double rho = minkowski_dot(j.x, j.x);
    if (std::fabs(rho) <= lc_tol)
        throw NearLightCone("bde_scaling_factor: point too close to the light cone");

    const BdeCoefficients src = bde_coeffs(j);
    const double jet_scale = std::max({euclid_norm(j.xu), euclid_norm(j.xv),
                                       euclid_norm(j.xuu), euclid_norm(j.xuv),
                                       euclid_norm(j.xvv)});
    const double coeff_tol = 1e-12 * jet_scale * jet_scale * jet_scale;
    const double src_scale = std::max({std::fabs(src.A), std::fabs(src.B), std::fabs(src.C)});
    if (src_scale <= coeff_tol)
        throw DegeneratePoint("bde_scaling_factor: all source BDE coefficients vanish");

    const BdeCoefficients inv = bde_coeffs(invert_jet(j, lc_tol));
    // Least-squares scalar; the residual is checked by the callers' tests.
    const double num = inv.A * src.A + inv.B * src.B + inv.C * src.C;
    const double den = src.A * src.A + src.B * src.B + src.C * src.C;
    return num / den;
}

}  // namespace lorentz
