#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgl/profilefield.hpp"
#include "cgl/spectral.hpp"

#include <cmath>

using namespace cgl;

namespace {

const Rational half(1, 2);

// exact <P, Q>_rho for polynomials (bilinear, no conjugation)
Gauss pairing(const PolyG& P, const PolyG& Q, const Rational& beta) {
    const PolyG R = P * Q;
    Gauss s;
    for (int k = 0; k <= R.degree(); ++k) s += R.coeff(k) * gaussian_moment(k, beta);
    return s;
}

// composite trapezoid of g(y) rho_beta(y) on [-40, 40]
template <class F>
cplx rho_integral(F g, double beta) {
    const int N = 80001;
    const double L = 40, dy = 2 * L / (N - 1);
    cplx s = 0;
    for (int i = 0; i < N; ++i) {
        const double y = -L + i * dy;
        s += (i == 0 || i == N - 1 ? 0.5 : 1.0) * g(y) * rho_beta(y, beta);
    }
    return s * dy;
}

}  // namespace

TEST_CASE("Hermite-type f_n against the rescaled physicists' Hermite polynomials") {
    // H2(x) = 4x^2 - 2 with x = y / (2 sqrt(1+i beta)), made monic: y^2 - 2(1+i beta)
    for (const Rational& beta : {Rational(0), half, Rational(-3, 7)}) {
        const PolyG f2 = hermite_f(2, beta);
        CHECK(f2 == PolyG{Gauss(Rational(-2), Rational(-2) * beta), Gauss(0), Gauss(1)});
    }
    // beta = 0: 16 x^4 - 48 x^2 + 12 at x = y/2, monic
    CHECK(hermite_f(4, Rational(0)) == PolyG{Gauss(12), Gauss(0), Gauss(-12), Gauss(0), Gauss(1)});
}

TEST_CASE("Gaussian moments") {
    CHECK(gaussian_moment(0, half) == Gauss(1));
    CHECK(gaussian_moment(3, half) == Gauss());
    CHECK(gaussian_moment(2, half) == Gauss(Rational(2), Rational(1)));
    // real Gaussian with variance 2: E y^4 = 3 * 2^2
    CHECK(gaussian_moment(4, Rational(0)) == Gauss(12));
    // numeric quadrature oracle
    const cplx m2 = rho_integral([](double y) { return cplx(y * y); }, 0.5);
    CHECK(std::abs(m2 - cplx(2, 1)) < 1e-10);
}

TEST_CASE("f_n are orthogonal for n, m <= 10") {
    for (const Rational& beta : {half, Rational(3, 4), Rational(-2)}) {
        for (int n = 0; n <= 10; ++n)
            for (int m = 0; m < n; ++m) CHECK(pairing(hermite_f(n, beta), hermite_f(m, beta), beta).is_zero());
        CHECK(pairing(hermite_f(3, beta), hermite_f(3, beta), beta) == hermite_norm(3, beta));
    }
}

TEST_CASE("basis at p = 3, delta = 1, beta = 1/2") {
    const BasisTable B = build_basis(10, Rational(3), Rational(1), half);
    CHECK(B.h[0] == PolyG{Gauss::i()});
    CHECK(B.ht[0] == PolyG{Gauss(Rational(1), Rational(1))});
    // i y^2 + beta - i(2 + delta beta)
    CHECK(B.h[2] == PolyG{Gauss(half, Rational(-5, 2)), Gauss(0), Gauss::i()});
    CHECK(B.c[2] == Rational(2));
    for (int n = 0; n <= B.M; ++n) {
        // L h_n = -n/2 h_n and L ht_n = (1 - n/2) ht_n + c_n h_{n-2}
        const Gauss lam(Rational(-n, 2));
        CHECK(apply_L(B.h[n], LVariant::beta_delta, B.beta, B.delta) == B.h[n] * lam);
        PolyG rhs = B.ht[n] * (lam + Gauss(1));
        if (n >= 2) rhs += B.h[n - 2] * Gauss(B.c[n]);
        CHECK(apply_L(B.ht[n], LVariant::beta_delta, B.beta, B.delta) == rhs);
        CHECK(B.c[n] == Rational(n * (n - 1)) * B.beta * (Rational(1) + B.delta * B.delta));
        CHECK(apply_L(B.f[n], LVariant::beta, B.beta, B.delta) == B.f[n] * lam);
    }
}

TEST_CASE("exact projection of i y^2") {
    // i y^2 = h2 + (2 + 2 beta delta) h0 - beta ht0
    const BasisTable B = build_basis(4, Rational(3), Rational(1), half);
    const auto m = project_poly(PolyG{Gauss(0), Gauss(0), Gauss::i()}, B);
    CHECK(m.q[2] == Gauss(1));
    CHECK(m.q[0] == Gauss(3));
    CHECK(m.qt[0] == Gauss(-half));
    CHECK(m.qt[2] == Gauss());
    CHECK(m.remainder.is_zero());
    CHECK(reconstruct(m.q, m.qt, B) == PolyG{Gauss(0), Gauss(0), Gauss::i()});

    // beta = 0 limit: i y^2 = h2 + 2 h0
    const BasisTable B0 = build_basis(4, Rational(2), Rational(1), Rational(0));
    const auto m0 = project_poly(PolyG{Gauss(0), Gauss(0), Gauss::i()}, B0);
    CHECK(m0.q[2] == Gauss(1));
    CHECK(m0.q[0] == Gauss(2));
    CHECK(m0.qt[0] == Gauss());
}

TEST_CASE("float recurrence agrees with the exact polynomials") {
    const BasisTable B = build_basis(12, Rational(3), Rational(1), half);
    std::vector<cplx> f;
    for (double y : {-7.5, -1.0, 0.0, 0.3, 4.25}) {
        eval_f(y, 0.5, 12, f);
        for (int n = 0; n <= 12; ++n) {
            const cplx e = to_float(B.f[n]).eval(cplx(y));
            CHECK(std::abs(f[n] - e) <= 1e-12 * (1 + std::abs(e)));
        }
    }
}

TEST_CASE("sampled projections recover the exact modes") {
    const BasisTable B = build_basis(8, Rational(3), Rational(1), half);
    const FloatBasis FB = float_basis(B);
    const UniformGrid g{40, 8001};
    std::vector<cplx> v(g.N);
    const PolyC P = to_float(B.ht[2]) * cplx(0.7) + to_float(B.h[4]) * cplx(-1.3) + to_float(B.ht[1]) * cplx(0.2);
    for (int i = 0; i < g.N; ++i) v[i] = P.eval(cplx(g.y(i)));

    const GridProjector proj(g, FB, 8);
    std::vector<double> q, qt;
    proj.modes(v.data(), q, qt);
    CHECK(std::abs(qt[2] - 0.7) < 1e-10);
    CHECK(std::abs(q[4] + 1.3) < 1e-10);
    CHECK(std::abs(qt[1] - 0.2) < 1e-10);
    CHECK(std::abs(q[0]) < 1e-10);
    CHECK(std::abs(qt[0]) < 1e-10);

    // Gauss-Hermite default rule, cubic interpolation of the samples
    const ModeCoeffs gh = project_sampled(v, g, FB);
    CHECK(std::abs(gh.qt[2] - 0.7) < 1e-6);
    CHECK(std::abs(gh.q[4] + 1.3) < 1e-6);
    const ModeCoeffs tr = project_sampled(v, g, FB, {QuadratureKind::trapezoid, 0});
    CHECK(std::abs(tr.qt[2] - 0.7) < 1e-10);
}

TEST_CASE("OpenMP projection is bitwise equal to the serial one") {
    const BasisTable B = build_basis(6, Rational(3), Rational(1), half);
    const FloatBasis FB = float_basis(B);
    const UniformGrid g{60, 12001};
    std::vector<cplx> v(g.N);
    for (int i = 0; i < g.N; ++i) v[i] = std::exp(cplx(-0.01 * g.y(i) * g.y(i), std::sin(g.y(i))));
    std::vector<cplx> a, b;
    GridProjector(g, FB, 6, Exec::serial).moments(v.data(), a);
    GridProjector(g, FB, 6, Exec::omp).moments(v.data(), b);
    CHECK(a == b);
}

TEST_CASE("a grid that cuts rho is rejected") {
    const BasisTable B = build_basis(4, Rational(3), Rational(1), half);
    CHECK(rho_tail_mass(5, 0.5) > 1e-6);
    CHECK(rho_tail_mass(30, 0.5) < 1e-14);
    CHECK_THROWS_AS(GridProjector(UniformGrid{8, 801}, float_basis(B), 4), GridTooNarrow);
}

TEST_CASE("heat kernel") {
    // y = x = 0, beta = 0, s = log 2: (4 pi (1 - 1/2))^{-1/2}
    CHECK(std::abs(semigroup_kernel(std::log(2.0), 0, 0, 0) - cplx(1 / std::sqrt(2 * M_PI))) < 1e-14);
    for (double s : {0.1, 1.0, 3.0})
        for (double y : {-2.0, 0.0, 1.5}) {
            cplx sum = 0;
            const double dx = 1e-3;
            for (double x = -40; x <= 40; x += dx) sum += semigroup_kernel(s, y, x, 0.5) * dx;
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
}

TEST_CASE("slowly varying profile projects onto ht0") {
    // phi0(y s^{-1/4}) ~ kappa = kappa (ht0 - delta h0) for large s
    const ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    const FloatParams P = FloatParams::from(K.P);
    const FloatBasis FB = float_basis(K.B);
    const UniformGrid g{40, 8001};
    const GridProjector proj(g, FB, 6);
    const double s = 1e4;
    std::vector<cplx> v(g.N);
    for (int i = 0; i < g.N; ++i) v[i] = phi0(g.y(i) * std::pow(s, -0.25), P);
    std::vector<double> q, qt;
    proj.modes(v.data(), q, qt);
    CHECK(std::abs(qt[0] - P.kappa) < 5 / std::sqrt(s) * P.kappa);
    CHECK(std::abs(q[0] + P.delta * P.kappa) < 5 / std::sqrt(s) * P.kappa);
}
