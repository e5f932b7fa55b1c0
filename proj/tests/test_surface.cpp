#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lorentz/forms.hpp"
#include "lorentz/surface.hpp"
#include "support.hpp"

using namespace lorentz;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

SurfacePatch plane_patch() {
    return SurfacePatch({-1, 1, -1, 1}, [](double u, double v) { return Vec3{u, v, 0}; });
}

double dist_e(Vec3 a, Vec3 b) { return euclid_norm(a - b); }
}  // namespace

TEST_CASE("eval: sphere positions and the flat graph") {
    const SurfacePatch s = builtin_sphere({2, 0, 0}, 1);
    const Vec3 p = s.eval(kTwoPi, kPi / 2);  // same image point as u = 0
    CHECK(p.x0 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::fabs(p.x1) < 1e-12);
    CHECK(std::fabs(p.x2) < 1e-12);

    const Vec3 pole = s.eval(1e-3, 1e-9);
    CHECK(dist_e(pole, {2, 0, 1}) < 1e-8);

    const SurfacePatch flat = builtin_graph_quadratic(0, 0, 0);
    const Vec3 q = flat.eval(0.25, -0.5);
    CHECK(q.x0 == 0.25);
    CHECK(q.x1 == -0.5);
    CHECK(q.x2 == 0.0);

    CHECK_THROWS_AS(flat.eval(5, 0), OutOfDomain);
}

TEST_CASE("jet2: exact sphere derivatives at a checkable point") {
    const SurfacePatch s = builtin_sphere({0, 0, 0}, 1);
    const Jet2 j = s.jet2(kTwoPi, kPi / 2);
    CHECK(dist_e(j.xu, {0, 1, 0}) < 1e-12);
    CHECK(dist_e(j.xv, {0, 0, -1}) < 1e-12);
}

TEST_CASE("jet2: plane second derivatives vanish") {
    const SurfacePatch p = plane_patch();  // FD path
    const Jet2 j = p.jet2(0.2, -0.3);
    CHECK(testsup::max_abs_component(j.xuu) < 1e-8);
    CHECK(testsup::max_abs_component(j.xuv) < 1e-8);
    CHECK(testsup::max_abs_component(j.xvv) < 1e-8);
}

TEST_CASE("jet2: finite differences converge at second order") {
    const SurfacePatch s = builtin_ellipsoid({0.5, -0.2, 0.1}, {1.0, 0.8, 0.6});
    auto pos = [&](double u, double v) { return s.eval_unchecked(u, v); };
    auto g = testsup::rng(11);
    double worst_order = 10.0;
    for (int i = 0; i < 100; ++i) {
        const double u = testsup::uniform(g, 0.5, kTwoPi - 0.5);
        const double v = testsup::uniform(g, 0.5, kPi - 0.5);
        const Jet2 exact = s.jet2(u, v);
        const double h1 = 1e-3, h2 = 5e-4;
        const Jet2 f1 = testsup::fd_jet(pos, u, v, h1);
        const Jet2 f2 = testsup::fd_jet(pos, u, v, h2);
        auto err = [&](const Jet2& f) {
            return std::max({testsup::max_abs_component(f.xu - exact.xu),
                             testsup::max_abs_component(f.xv - exact.xv),
                             testsup::max_abs_component(f.xuu - exact.xuu),
                             testsup::max_abs_component(f.xuv - exact.xuv),
                             testsup::max_abs_component(f.xvv - exact.xvv)});
        };
        const double e1 = err(f1), e2 = err(f2);
        if (e2 < 1e-12) continue;  // below FD noise floor, order is meaningless
        worst_order = std::min(worst_order, std::log2(e1 / e2));
    }
    CHECK(worst_order >= 1.9);
}

TEST_CASE("jet2: the patch's own FD path tracks the exact jets") {
    const SurfacePatch exact = builtin_sphere({2, 0, 0}, 1);
    const SurfacePatch fd(exact.domain(),
                          [exact](double u, double v) { return exact.eval_unchecked(u, v); });
    auto g = testsup::rng(12);
    for (int i = 0; i < 50; ++i) {
        const double u = testsup::uniform(g, 0.5, kTwoPi - 0.5);
        const double v = testsup::uniform(g, 0.5, kPi - 0.5);
        const Jet2 a = exact.jet2(u, v), b = fd.jet2(u, v);
        CHECK(testsup::max_abs_component(a.xu - b.xu) < 1e-7);
        CHECK(testsup::max_abs_component(a.xuu - b.xuu) < 1e-5);
        CHECK(testsup::max_abs_component(a.xuv - b.xuv) < 1e-5);
    }
    CHECK_THROWS_AS(fd.jet2(fd.domain().u_min + 1e-9, 1.0), OutOfDomain);
}

TEST_CASE("builtin_sphere geometry") {
    CHECK_THROWS_AS(builtin_sphere({0, 0, 0}, 0.0), NonpositiveRadius);

    const SurfacePatch s1 = builtin_sphere({2, 0, 0}, 1);
    const Vec3 p = s1.eval(kPi, kPi / 2);
    CHECK(dist_e(p, {1, 0, 0}) < 1e-12);

    const SurfacePatch s2 = builtin_sphere({0, 0, 0}, 2);
    auto g = testsup::rng(13);
    for (int i = 0; i < 100; ++i) {
        const double u = testsup::uniform(g, 1e-3, 1e-3 + kTwoPi);
        const double v = testsup::uniform(g, 0, kPi);
        CHECK(euclid_norm(s2.eval(u, v)) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(dist_e(s1.eval(u, v), {2, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("builtin_sphere_polar_x covers the standard chart's poles") {
    const SurfacePatch s = builtin_sphere_polar_x({2, 0, 0}, 1);
    // poles of the standard chart are (2,0,+-1); here they are interior
    const Vec3 top = s.eval(1e-3 + kPi, kPi / 2);
    CHECK(dist_e(top, {2, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    auto g = testsup::rng(14);
    for (int i = 0; i < 100; ++i) {
        const double u = testsup::uniform(g, 1e-3, 1e-3 + kTwoPi);
        const double v = testsup::uniform(g, 0, kPi);
        CHECK(dist_e(s.eval(u, v), {2, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("builtin_ellipsoid geometry") {
    CHECK_THROWS_AS(builtin_ellipsoid({0, 0, 0}, {1, -1, 1}), NonpositiveSemiaxis);

    // unit semiaxes reduce to the sphere
    const SurfacePatch e1 = builtin_ellipsoid({0, 0, 0}, {1, 1, 1});
    const SurfacePatch s1 = builtin_sphere({0, 0, 0}, 1);
    CHECK(dist_e(e1.eval(1.0, 1.0), s1.eval(1.0, 1.0)) < 1e-15);

    const SurfacePatch e2 = builtin_ellipsoid({0.5, 0, 0}, {2, 1, 1});
    CHECK(dist_e(e2.eval(kTwoPi, kPi / 2), {2.5, 0, 0}) < 1e-12);

    auto g = testsup::rng(15);
    for (int i = 0; i < 100; ++i) {
        const double u = testsup::uniform(g, 1e-3, 1e-3 + kTwoPi);
        const double v = testsup::uniform(g, 0, kPi);
        const Vec3 p = e2.eval(u, v) - Vec3{0.5, 0, 0};
        const double lhs = p.x0 * p.x0 / 4 + p.x1 * p.x1 + p.x2 * p.x2;
        CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("translate shifts positions and keeps jets") {
    const SurfacePatch s = builtin_sphere({2, 0, 0}, 1);
    const SurfacePatch t = translate(s, {2, 0, 0});
    const SurfacePatch ref = builtin_sphere({4, 0, 0}, 1);
    auto g = testsup::rng(16);
    for (int i = 0; i < 50; ++i) {
        const double u = testsup::uniform(g, 0.5, kTwoPi - 0.5);
        const double v = testsup::uniform(g, 0.5, kPi - 0.5);
        CHECK(dist_e(t.eval(u, v), ref.eval(u, v)) < 1e-12);
        const Jet2 a = s.jet2(u, v), b = t.jet2(u, v);
        CHECK(testsup::max_abs_component(a.xu - b.xu) == 0.0);
        const SecondFormsBar fa = second_forms_bar(a), fb = second_forms_bar(b);
        CHECK(fa.lbar == fb.lbar);
        CHECK(fa.mbar == fb.mbar);
        CHECK(fa.nbar == fb.nbar);
    }
    const SurfacePatch id = translate(s, {0, 0, 0});
    CHECK(dist_e(id.eval(1.0, 1.0), s.eval(1.0, 1.0)) == 0.0);
}

TEST_CASE("invert_patch: de Sitter point is fixed, involution holds") {
    const SurfacePatch s = builtin_sphere({2, 0, 0}, 1);
    const SurfacePatch inv = invert_patch(s);

    // (1,0,0) = s(pi, pi/2) lies on the de Sitter sphere
    CHECK(dist_e(inv.eval(kPi, kPi / 2), {1, 0, 0}) < 1e-12);

    const SurfacePatch twice = invert_patch(inv);
    auto g = testsup::rng(17);
    for (int i = 0; i < 100; ++i) {
        const double u = testsup::uniform(g, 0.5, kTwoPi - 0.5);
        const double v = testsup::uniform(g, 0.5, kPi - 0.5);
        REQUIRE(!twice.masked_at(u, v));
        CHECK(dist_e(twice.eval(u, v), s.eval(u, v)) <= 1e-10);
    }
}

TEST_CASE("invert_patch contains the reference parabolic-set point") {
    // locate the preimage of (3/4, sqrt(15)/12, 0) by numerical solve
    const SurfacePatch s = builtin_sphere({2, 0, 0}, 1);
    const SurfacePatch inv = invert_patch(s);
    const Vec3 target{0.75, std::sqrt(15.0) / 12.0, 0.0};

    double bu = 0, bv = 0, best = 1e300;
    for (int i = 0; i < 400; ++i) {
        for (int k = 0; k < 200; ++k) {
            const double u = 1e-3 + (i + 0.5) * kTwoPi / 400;
            const double v = (k + 0.5) * kPi / 200;
            const double d = dist_e(inv.eval_unchecked(u, v), target);
            if (d < best) { best = d; bu = u; bv = v; }
        }
    }
    // local refinement by coordinate shrink
    double span_u = kTwoPi / 400, span_v = kPi / 200;
    for (int round = 0; round < 40; ++round) {
        const double du[5] = {-span_u, -span_u / 2, 0, span_u / 2, span_u};
        for (double ou : du)
            for (double ov : du) {
                const double u = bu + ou, v = bv + ov * (span_v / span_u);
                const double d = dist_e(inv.eval_unchecked(u, v), target);
                if (d < best) { best = d; bu = u; bv = v; }
            }
        span_u *= 0.5;
        span_v *= 0.5;
    }
    CHECK(best < 1e-9);
    // the analytic preimage parameters are (acos(-7/8), pi/2)
    CHECK(bu == doctest::Approx(std::acos(-7.0 / 8.0)).epsilon(1e-6));
    CHECK(bv == doctest::Approx(kPi / 2).epsilon(1e-6));
}

TEST_CASE("invert_patch: chain-rule jets match finite differences") {
    const SurfacePatch surfaces[] = {
        builtin_sphere({2, 0, 0}, 1),
        builtin_ellipsoid({2.5, 0.3, -0.2}, {1.0, 0.8, 0.6}),
        builtin_graph_quadratic(3, 0, -3, {0, 0, 6}, 1.0),
    };
    auto g = testsup::rng(18);
    for (const SurfacePatch& s : surfaces) {
        const SurfacePatch inv = invert_patch(s);
        auto pos = [&](double u, double v) { return inv.eval_unchecked(u, v); };
        const Domain& d = s.domain();
        int tested = 0;
        while (tested < 70) {
            const double u = testsup::uniform(g, d.u_min + 0.05 * d.u_extent(),
                                              d.u_max - 0.05 * d.u_extent());
            const double v = testsup::uniform(g, d.v_min + 0.05 * d.v_extent(),
                                              d.v_max - 0.05 * d.v_extent());
            if (inv.masked_at(u, v)) continue;
            ++tested;
            const Jet2 a = inv.jet2(u, v);
            const Jet2 b = testsup::fd_jet(pos, u, v, 1e-4);
            const double scale = std::max(
                {1e-12, testsup::max_abs_component(a.xuu),
                 testsup::max_abs_component(a.xuv), testsup::max_abs_component(a.xvv)});
            CHECK(testsup::max_abs_component(a.xu - b.xu) / scale < 1e-6);
            CHECK(testsup::max_abs_component(a.xuu - b.xuu) / scale < 1e-6);
            CHECK(testsup::max_abs_component(a.xuv - b.xuv) / scale < 1e-6);
            CHECK(testsup::max_abs_component(a.xvv - b.xvv) / scale < 1e-6);
        }
    }
}

TEST_CASE("inverted image is bounded by alpha * beta off the light cone") {
    const SurfacePatch s = builtin_sphere({2, 0, 0}, 1);
    const SurfacePatch inv = invert_patch(s);
    double alpha = 0, beta = 0, min_abs_rho = 1e300;
    for (int i = 0; i < 300; ++i) {
        for (int k = 0; k < 150; ++k) {
            const double u = 1e-3 + (i + 0.5) * kTwoPi / 300;
            const double v = (k + 0.5) * kPi / 150;
            const Vec3 p = s.eval(u, v);
            const double rho = minkowski_dot(p, p);
            min_abs_rho = std::min(min_abs_rho, std::fabs(rho));
            alpha = std::max(alpha, 1.0 / std::fabs(rho));
            beta = std::max(beta, minkowski_norm(p));
        }
    }
    CHECK(min_abs_rho > 0.0);  // the sphere misses the light cone
    for (int i = 0; i < 300; ++i) {
        for (int k = 0; k < 150; ++k) {
            const double u = 1e-3 + (i + 0.5) * kTwoPi / 300;
            const double v = (k + 0.5) * kPi / 150;
            CHECK(minkowski_norm(inv.eval(u, v)) <= alpha * beta * (1 + 1e-12));
        }
    }
}

TEST_CASE("invert_patch masks the light-cone preimage") {
    // sphere through the origin: <p,p> = 0 at (pi, pi/2)
    const SurfacePatch s = builtin_sphere({1, 0, 0}, 1);
    const SurfacePatch inv = invert_patch(s);
    CHECK(inv.masked_at(kPi, kPi / 2));
    CHECK_THROWS_AS(inv.eval(kPi, kPi / 2), Masked);
    CHECK(!inv.masked_at(kTwoPi, kPi / 2));
}
