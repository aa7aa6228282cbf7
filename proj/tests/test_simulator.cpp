#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgl/shoot.hpp"
#include "cgl/simulator.hpp"

#include <cmath>
#include <random>

using namespace cgl;

namespace {

std::vector<cplx> random_field(int n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> v(n);
    for (auto& x : v) x = cplx(u(gen), u(gen));
    return v;
}

BoundaryFn zero_boundary() {
    return [](double) { return std::pair<cplx, cplx>(0.0, 0.0); };
}

// the light knobs used wherever a full window is not needed
SimConfig light() {
    SimConfig c;
    c.N = 4608;
    c.ds = 1e-3;
    return c;
}

}  // namespace

TEST_CASE("kernels: OpenMP variants reproduce the serial reference bitwise") {
    const int n = 10007;
    const auto a = random_field(n, 1), b = random_field(n, 2), c = random_field(n, 3);
    std::vector<cplx> r1(n), r2(n);
    reaction(a.data(), r1.data(), n, 3, cplx(1, 1), Exec::serial);
    reaction(a.data(), r2.data(), n, 3, cplx(1, 1), Exec::omp);
    CHECK(r1 == r2);
    reaction(a.data(), r1.data(), n, 2.5, cplx(1, -0.5), Exec::serial);
    reaction(a.data(), r2.data(), n, 2.5, cplx(1, -0.5), Exec::omp);
    CHECK(r1 == r2);
    combine(r1.data(), n, 2, a.data(), -0.5, b.data(), 1e-3, c.data(), 0, nullptr, Exec::serial);
    combine(r2.data(), n, 2, a.data(), -0.5, b.data(), 1e-3, c.data(), 0, nullptr, Exec::omp);
    CHECK(r1 == r2);
    CHECK(sup_abs(a.data(), n, Exec::serial) == sup_abs(a.data(), n, Exec::omp));
    std::vector<cplx> m1(2), m2(2);
    const std::vector<const cplx*> rows = {b.data(), c.data()};
    moments(rows, a.data(), 17, n - 5, m1.data(), Exec::serial);
    moments(rows, a.data(), 17, n - 5, m2.data(), Exec::omp);
    CHECK(m1 == m2);
}

TEST_CASE("pentadiagonal solve against dense elimination") {
    const int n = 40;
    auto d = std::vector<std::vector<cplx>>(5, std::vector<cplx>(n));
    const auto r = random_field(5 * n, 7);
    std::vector<std::vector<cplx>> A(n, std::vector<cplx>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 5; ++k) {
            const int j = i + k - 2;
            if (j < 0 || j >= n) continue;
            d[k][i] = r[5 * i + k] + (k == 2 ? cplx(6, 0) : cplx(0));
            A[i][j] = d[k][i];
        }
    const PentaLU lu(d);
    auto x = random_field(n, 9);
    const auto rhs = x;
    lu.solve(x.data());
    for (int i = 0; i < n; ++i) {
        cplx s = 0;
        for (int j = 0; j < n; ++j) s += A[i][j] * x[j];
        CHECK(std::abs(s - rhs[i]) < 1e-12);
    }
}

TEST_CASE("maximum principle for beta = 0") {
    const UniformGrid g{90, 9216};
    auto q = random_field(g.N, 11);
    q.front() = q.back() = 0;
    double prev = sup_abs(q.data(), g.N, Exec::serial);
    ImexStepper st(g, cplx(1, 0), 0.0, 5e-4, Scheme::imex1, 2);
    for (int k = 0; k < 200; ++k) {
        st.step(q, nullptr, 0.0, 0.0);
        const double m = sup_abs(q.data(), g.N, Exec::serial);
        REQUIRE(m <= prev * (1 + 1e-14));
        prev = m;
    }
}

TEST_CASE("growth per step stays below sqrt(1 + beta^2) for beta != 0") {
    const UniformGrid g{90, 9216};
    for (double beta : {0.5, 2.0}) {
        auto q = random_field(g.N, 13);
        q.front() = q.back() = 0;
        double prev = sup_abs(q.data(), g.N, Exec::serial);
        ImexStepper st(g, cplx(1, beta), 0.0, 5e-4, Scheme::imex1, 2);
        for (int k = 0; k < 100; ++k) {
            st.step(q, nullptr, 0.0, 0.0);
            const double m = sup_abs(q.data(), g.N, Exec::serial);
            REQUIRE(m <= prev * std::sqrt(1 + beta * beta));
            prev = m;
        }
    }
}

TEST_CASE("time order of imex1 and imex2 on an eigenfunction") {
    // f_3 is reproduced exactly by the stencils, so only the time error is left
    const double beta = 0.5;
    const UniformGrid g{12, 1201};
    auto f3 = [&](double y) { return y * y * y - 6.0 * cplx(1, beta) * y; };
    auto err = [&](Scheme sc, double ds) {
        std::vector<cplx> q(g.N);
        for (int i = 0; i < g.N; ++i) q[i] = f3(g.y(i));
        const int steps = static_cast<int>(std::lround(0.5 / ds));
        const BoundaryFn bc = [&](double s) {
            const double e = std::exp(-1.5 * s);
            return std::pair<cplx, cplx>(e * f3(-g.L), e * f3(g.L));
        };
        q = evolve_linear(q, g, beta, ds, steps, sc, 4, bc);
        double m = 0;
        for (int i = 0; i < g.N; ++i) m = std::max(m, std::abs(q[i] - std::exp(-0.75) * f3(g.y(i))));
        return m;
    };
    const double r1 = err(Scheme::imex1, 0.01) / err(Scheme::imex1, 0.005);
    const double r2 = err(Scheme::imex2, 0.01) / err(Scheme::imex2, 0.005);
    CHECK(r1 == doctest::Approx(2).epsilon(0.1));
    CHECK(r2 == doctest::Approx(4).epsilon(0.15));
}

TEST_CASE("config invariants") {
    SimConfig c;
    CHECK_NOTHROW(c.validate(default_K(FloatParams::from(derive_params(Rational(3), Rational(1))))));
    c.ds = 2e-3;
    CHECK_THROWS_AS(c.validate(12), DomainError);
    c = SimConfig{};
    c.L = 60;
    CHECK_THROWS_AS(c.validate(12), DomainError);
    c = SimConfig{};
    c.M_track = 5;
    CHECK_THROWS_AS(c.validate(12), DomainError);
    c = SimConfig{};
    c.K_data = 20;
    CHECK_THROWS_AS(c.validate(12), DomainError);
    CHECK(parse_scheme("imex2") == Scheme::imex2);
    CHECK_THROWS(parse_scheme("rk4"));
}

TEST_CASE("one step from the bare profile moves w by about ds |R*|") {
    const Simulator sim(light());
    const FloatParams& P = sim.params();
    const UniformGrid& g = sim.grid();
    const double s0 = 100, ds = 1e-3;
    std::vector<cplx> w(g.N), target(g.N), nl(g.N);
    sim.profile_on_grid(s0, w);
    for (auto& v : w) v *= std::exp(cplx(0, sim.base_phase(s0)));
    sim.profile_on_grid(s0 + ds, target);
    const cplx rot = std::exp(cplx(0, sim.base_phase(s0 + ds)));
    for (auto& v : target) v *= rot;
    reaction(w.data(), nl.data(), g.N, P.p, cplx(1, P.delta), Exec::serial);
    ImexStepper st(g, cplx(1, P.beta), cplx(-1, -P.delta) / (P.p - 1), ds, Scheme::imex1, 4);
    st.step(w, &nl, target.front(), target.back());
    double diff = 0, rs = 0;
    const EvalContext ctx{P, s0, 0};
    for (int i = 0; i < g.N; ++i) {
        diff = std::max(diff, std::abs(w[i] - target[i]));
        rs = std::max(rs, std::abs(rest_Rstar(g.y(i), ctx)));
    }
    CHECK(diff <= 1.5 * ds * rs);
    CHECK(diff >= 0.5 * ds * rs);
}

TEST_CASE("a short run keeps P_0(q) = 0 and is deterministic") {
    SimConfig c = light();
    c.s_end = 100.2;
    const Simulator sim(c);
    InitialDataSpec spec;
    spec.d0_tilde = 0.1;
    spec.d1_tilde = -0.2;
    RunOptions opt;
    opt.record_every = 20;
    const RunResult a = run(sim, spec, opt);
    const RunResult b = run(sim, spec, opt);
    REQUIRE(a.history.size() == b.history.size());
    for (size_t k = 0; k < a.history.size(); ++k) {
        CHECK(std::abs(a.history[k].p0) <= 1e-9);
        CHECK(a.history[k].theta == b.history[k].theta);
        CHECK(a.history[k].q == b.history[k].q);
        CHECK(a.history[k].qt == b.history[k].qt);
    }
    CHECK_FALSE(a.exited);
    CHECK_FALSE(a.modulation_flag);
    CHECK(a.last.qt[2] * a.last.s == doctest::Approx(sim.combos().At2).epsilon(0.01));

    c.exec = Exec::omp;
    const RunResult o = run(Simulator(c), spec, opt);
    CHECK(o.last.theta == a.last.theta);
    CHECK(o.last.qt == a.last.qt);
}

TEST_CASE("data outside the set exits at once through the expected mode") {
    SimConfig c = light();
    c.s_end = 100.1;
    const Simulator sim(c);
    InitialDataSpec spec;
    spec.d0_tilde = 1.5;
    const RunResult r = run(sim, spec);
    CHECK(r.exited);
    CHECK(r.exit_s == 100);
    CHECK(r.exit_component == "Qt0");
    CHECK(r.phi.phi0 == doctest::Approx(1.5).epsilon(0.01));
    spec.d0_tilde = 0;
    spec.d1_tilde = -1.5;
    const RunResult r1 = run(sim, spec);
    CHECK(r1.exit_component == "qt1");
    CHECK(quadrant(r1.phi.phi0, r1.phi.phi1) == 3);
}

TEST_CASE("a wide initial cutoff triggers the blow-up guard") {
    SimConfig c = light();
    c.s_end = 101;
    c.K_data = 11.5;
    const Simulator sim(c);
    CHECK_THROWS_AS(run(sim, InitialDataSpec{}), NumericalFailure);
}
