#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgl/profilefield.hpp"
#include "cgl/spectral.hpp"

#include <cmath>

using namespace cgl;

namespace {

struct Fixture {
    ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    FloatParams P = FloatParams::from(K.P);
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("phi0 solves the profile equation") {
    const FloatParams& P = fx().P;
    double worst = 0;
    for (double z = -60; z <= 60; z += 0.05) worst = std::max(worst, std::abs(profile_equation_residual(z, P)));
    CHECK(worst < 1e-14);
    // |phi0|^2 = kappa^2 / (1 + b z^2 / 2) = 1 / (2 + b z^2) at p = 3
    for (double z : {0.0, 1.0, 7.5})
        CHECK(std::norm(phi0(z, P)) == doctest::Approx(1 / (2 + P.b * z * z)).epsilon(1e-14));
    CHECK(phi0(0, P).imag() == 0);
}

TEST_CASE("closed-form derivatives of phi against differences") {
    const EvalContext c{fx().P, 50, 0};
    for (double y : {-9.0, 0.7, 4.0}) {
        const PhiJet J = phi_jet(y, c);
        const double h = 1e-4;
        const cplx dy = (phi(y + h, c) - phi(y - h, c)) / (2 * h);
        const cplx dyy = (phi(y + h, c) - 2.0 * phi(y, c) + phi(y - h, c)) / (h * h);
        EvalContext a = c, b = c;
        a.s += h;
        b.s -= h;
        const cplx ds = (phi(y, a) - phi(y, b)) / (2 * h);
        CHECK(std::abs(J.dy - dy) < 1e-8);
        CHECK(std::abs(J.dyy - dyy) < 1e-6);
        CHECK(std::abs(J.ds - ds) < 1e-8);
    }
}

TEST_CASE("rest term decays like s^{-1/2}") {
    std::vector<double> c;
    for (double s : {25.0, 100.0, 400.0}) {
        const EvalContext ctx{fx().P, s, 0};
        double m = 0;
        for (double y = -300; y <= 300; y += 0.02) m = std::max(m, std::abs(rest_R(y, ctx)));
        c.push_back(m * std::sqrt(s));
    }
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    CHECK(*hi / *lo < 2);
    CHECK(*hi < 1);
}

TEST_CASE("Taylor truncations of V1, V2 and R*") {
    const TaylorPolys T = taylor_polys(fx().K);
    for (double s : {1e3, 1e4}) {
        const EvalContext ctx{fx().P, s, 0};
        const double Y = std::pow(s, 0.25), r = std::sqrt(s);
        double cv = 0, cr = 0;
        for (double y = -Y; y <= Y; y += Y / 500) {
            const cplx yc(y);
            const Potentials V = potentials(y, ctx);
            const double w6 = (1 + std::pow(y, 6)) / std::pow(s, 1.5), w4 = (1 + std::pow(y, 4)) / std::pow(s, 1.5);
            cv = std::max(cv, std::abs(V.V1 - T.W11.eval(yc) / r - T.W12.eval(yc) / s) / w6);
            cv = std::max(cv, std::abs(V.V2 - T.W21.eval(yc) / r - T.W22.eval(yc) / s) / w6);
            cr = std::max(cr, std::abs(rest_Rstar(y, ctx) - T.Rstar[0].eval(yc) / r - T.Rstar[1].eval(yc) / s) / w4);
        }
        CHECK(cv < 1e-3);
        CHECK(cr < 0.05);
    }
}

TEST_CASE("cutoff") {
    CHECK(chi0(0) == 1);
    CHECK(chi0(1) == 1);
    CHECK(chi0(2) == 0);
    CHECK(chi0(1.5) == doctest::Approx(0.5));
    double prev = 1;
    for (double x = 1; x <= 2; x += 1e-3) {
        CHECK(chi0(x) <= prev);
        prev = chi0(x);
    }
    // flat at both ends
    CHECK(std::abs(chi0(1 + 1e-4) - 1) < 1e-11);
    CHECK(std::abs(chi0(2 - 1e-4)) < 1e-11);
    const FloatParams& P = fx().P;
    const double K = default_K(P);
    CHECK(1 / (P.p - 1 + P.b * K * K) == doctest::Approx(0.1 / (P.p - 1)));
    CHECK(cutoff_chi(K * std::pow(100.0, 0.25), 100, K) == 1);
}

TEST_CASE("initial data satisfies the modulation condition") {
    const ConstantsBundle& K = fx().K;
    const FloatParams& P = fx().P;
    const FloatCombos c = float_combos(K.combos, P.kappa);
    const UniformGrid g{90, 9216};
    const GridProjector proj(g, float_basis(K.B), 6);
    for (auto [d0, d1] : {std::pair{0.0, 0.0}, {1.5, -0.5}, {-2.0, 2.0}}) {
        InitialDataSpec spec;
        spec.d0_tilde = d0;
        spec.d1_tilde = d1;
        spec.K = 6;
        const InitialData id = initial_data(spec, P, c, K.B, g, proj);
        CHECK(std::abs(id.p0_of_psi) <= 1e-9);
        std::vector<double> q, qt;
        proj.modes(id.psi.data(), q, qt);
        const double s0 = spec.s0;
        CHECK(qt[2] * s0 == doctest::Approx(c.At2).epsilon(1e-6));
        CHECK(qt[1] * std::pow(s0, 1.5) / spec.A == doctest::Approx(d1).epsilon(1e-6));
        // support ends at |2y| = 2 K s0^{1/4}
        for (int i = 0; i < g.N; ++i)
            if (std::abs(g.y(i)) >= spec.K * std::pow(s0, 0.25)) REQUIRE(id.psi[i] == cplx(0));
    }
}

TEST_CASE("the nonlinear remainder is quadratic") {
    const EvalContext ctx{fx().P, 100, 0};
    for (double y : {0.0, 3.0, -12.0}) {
        double prev = -1;
        for (double e : {1e-2, 1e-3, 1e-4}) {
            const cplx q = e * cplx(0.6, -0.8);
            const double ratio = std::abs(nonlinear_B(q, y, ctx)) / std::norm(q);
            CHECK(ratio < 10);
            if (prev > 0) CHECK(std::abs(ratio - prev) < 0.05 * prev + 1e-12);
            prev = ratio;
        }
    }
}

TEST_CASE("final profile blows up like |x|^{-2/(p-1)} up to a log factor") {
    const FloatParams& P = fx().P;
    const double x1 = 1e-10, x2 = 1e-12;
    const double slope = (std::log(std::abs(final_profile(x2, P))) - std::log(std::abs(final_profile(x1, P)))) /
                         (std::log(x2) - std::log(x1));
    CHECK(std::abs(slope + 2 / (P.p - 1)) < 0.05);
    CHECK_THROWS_AS(final_profile(0, P), DomainError);
    CHECK_THROWS_AS(final_profile(1.5, P), DomainError);
}
