// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail 3,5,6] [--only 1,2,...]
//
// Exits 0 when the set of failing criteria equals the expected set.
#include "cgl/formal.hpp"
#include "cgl/profilefield.hpp"
#include "cgl/shoot.hpp"
#include "cgl/transcribed.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace cgl;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Sample {
    const char* p;
    const char* delta;
};

const Sample kSamples[] = {{"3/2", "1/2"}, {"3/2", "1"},   {"3/2", "2"}, {"3/2", "-1"}, {"2", "1/2"}, {"2", "1"},
                           {"2", "3/2"},   {"2", "3"},     {"3", "1/2"}, {"3", "1"},    {"3", "2"},   {"3", "3"},
                           {"3", "-1"},    {"4", "1/2"},   {"4", "1"},   {"4", "3"},    {"4", "7/2"}, {"7", "1/2"},
                           {"7", "1"},     {"7", "2"},     {"7", "4"}};

Rational R(const char* s) { return Rational::parse(s); }

std::string at(const Sample& s) { return std::string("(") + s.p + ", " + s.delta + ")"; }

std::string num(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

// ------------------------------------------------------------------ 1

Verdict c1_b_cross_formula() {
    int agree = 0, n = 0;
    std::string first_bad;
    std::vector<Rational> deltas;
    for (int k = 1; k <= 19; ++k) deltas.emplace_back(k, 5);
    deltas.emplace_back(1, 7);
    for (const Rational& d : deltas) {
        ++n;
        const Rational a = b_critical(Rational(3), d), b = printed::b2_p3(d), c = printed::b2_formal(Rational(3), d);
        if (a == b && a == c)
            ++agree;
        else if (first_bad.empty())
            first_bad = " first mismatch at delta = " + d.str();
    }
    return {agree == n, std::to_string(agree) + "/" + std::to_string(n) + " delta values agree exactly" + first_bad};
}

// ------------------------------------------------------------------ 2

Verdict c2_cancellations() {
    int ok = 0, n = 0;
    std::string bad;
    for (const Sample& s : kSamples) {
        ++n;
        const ConstantsBundle K = compute_constants(R(s.p), R(s.delta));
        const OdeCoefficients& o = K.ode;
        if (o.coef_1_over_s.is_zero() && o.coef_q2_over_sqrt_s.is_zero() && o.coef_q2sq.is_zero() && o.coef_s32.is_zero())
            ++ok;
        else if (bad.empty())
            bad = "; first nonzero residual at " + at(s);
    }
    return {ok == n, "1/s, q2/sqrt(s), q2^2, 1/s^{3/2} vanish on " + std::to_string(ok) + "/" + std::to_string(n) +
                         " samples" + bad};
}

// ------------------------------------------------------------------ 3

Verdict c3_htilde1() {
    int long_ok = 0, closed_ok = 0, gap_ok = 0, bound_ok = 0, n = 0;
    for (const Sample& s : kSamples) {
        ++n;
        const ConstantsBundle K = compute_constants(R(s.p), R(s.delta));
        const Rational h1 = K.ode.Htilde1.value().c0().re;
        const auto e = printed::ode_expressions(K.P, K.T, K.bq, K.combos.X2, K.combos.Xt0);
        if (e.Htilde1 == K.ode.Htilde1) ++long_ok;
        if (printed::htilde1_closed(R(s.p), R(s.delta)) == h1) ++closed_ok;
        bool gaps = true;
        for (int f = 0; f < 3; ++f) gaps = gaps && printed::htilde1_gap(R(s.p), R(s.delta), f) == h1 + Rational(3, 2);
        if (gaps) ++gap_ok;
        if (h1 <= Rational(-3, 2)) ++bound_ok;
    }
    const ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    const Rational spot = K.ode.Htilde1.value().c0().re;
    const bool spot_ok = spot == Rational(-379, 252);
    std::ostringstream os;
    os << "long expression " << long_ok << "/" << n << ", closed form " << closed_ok << "/" << n << ", closed quotient "
       << gap_ok << "/" << n << ", Ht1 <= -3/2 " << bound_ok << "/" << n << "; Ht1(3,1) = " << spot.str()
       << " (printed -379/252)";
    return {long_ok == n && closed_ok == n && gap_ok == n && bound_ok == n && spot_ok, os.str()};
}

// ------------------------------------------------------------------ 4

Verdict c4_mu() {
    int ok = 0, n = 0;
    std::string bad;
    for (const Sample& s : kSamples) {
        ++n;
        const ConstantsBundle K = compute_constants(R(s.p), R(s.delta));
        const MuResult& m = K.mu;
        if (!m.a0.is_zero() && m.mu.is_real() && m.mu.c1().is_zero() && m.residual.is_zero() && m.affine)
            ++ok;
        else if (bad.empty())
            bad = "; first failure at " + at(s);
    }
    const ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    return {ok == n, "a0 != 0, mu real, 1/s^2 residual zero on " + std::to_string(ok) + "/" + std::to_string(n) +
                         " samples; mu(3,1) = " + to_text(K.P.mu.c0().re) + bad};
}

// ------------------------------------------------------------------ 5

Verdict c5_formal() {
    int cfree = 0, root = 0, mu_ok = 0, n = 0;
    std::string mu_match;
    for (const Sample& s : kSamples) {
        ++n;
        const FormalB2 f = formal_b2(R(s.p), R(s.delta));
        if (f.c_free) ++cfree;
        if (f.affine && f.root == b_critical(R(s.p), R(s.delta))) ++root;
        const FormalMu m = formal_mu(R(s.p), R(s.delta));
        if (m.regenerated == m.printed) {
            ++mu_ok;
            mu_match += " " + at(s);
        }
    }
    std::ostringstream os;
    os << "P free of C " << cfree << "/" << n << ", b^2 root = b_cri " << root << "/" << n << ", printed mu formula "
       << mu_ok << "/" << n;
    if (!mu_match.empty()) os << " (matches at" << mu_match << ")";
    return {cfree == n && root == n && mu_ok == n, os.str()};
}

// ------------------------------------------------------------------ 6

Verdict c6_basis() {
    int printed_ok = 0, printed_n = 0, rel_ok = 0, n = 0;
    std::set<std::string> bad;
    for (const Sample& s : kSamples) {
        ++n;
        const ProfileParams P = derive_params(R(s.p), R(s.delta));
        const BasisTable B = build_basis(10, P.p, P.delta, P.beta);
        for (int k : {0, 1, 2, 4, 6}) {
            printed_n += 2;
            const bool h = B.h[k] == printed::basis_h(k, P.beta, P.delta);
            const bool ht = B.ht[k] == printed::basis_ht(k, P.beta, P.delta);
            printed_ok += h + ht;
            if (!h) bad.insert("h" + std::to_string(k));
            if (!ht) bad.insert("ht" + std::to_string(k));
        }
        bool rel = true;
        for (int k = 0; k <= B.M; ++k) {
            const Gauss lam(Rational(-k, 2));
            rel = rel && apply_L(B.h[k], LVariant::beta_delta, B.beta, B.delta) == B.h[k] * lam;
            PolyG rhs = B.ht[k] * (lam + Gauss(1));
            if (k >= 2) rhs += B.h[k - 2] * Gauss(B.c[k]);
            rel = rel && apply_L(B.ht[k], LVariant::beta_delta, B.beta, B.delta) == rhs;
        }
        for (int a = 0; a <= 10 && rel; ++a)
            for (int b = 0; b < a; ++b) {
                const PolyG pr = B.f[a] * B.f[b];
                Gauss v;
                for (int k = 0; k <= pr.degree(); ++k) v += pr.coeff(k) * gaussian_moment(k, B.beta);
                rel = rel && v.is_zero();
            }
        if (rel) ++rel_ok;
    }
    std::string mism;
    for (const auto& b : bad) mism += " " + b;
    std::ostringstream os;
    os << "printed coefficients " << printed_ok << "/" << printed_n << " exact";
    if (!mism.empty()) os << " (mismatch in" << mism << ")";
    os << "; eigen/Jordan relations (n <= 10) and f orthogonality (n, m <= 10) on " << rel_ok << "/" << n << " samples";
    return {printed_ok == printed_n && rel_ok == n, os.str()};
}

// ------------------------------------------------------------------ 7

Verdict c7_linear() {
    const double beta = 0.5, ds = 1e-4, s_end = 1;
    const UniformGrid g{10, 2001};  // dy = 0.01
    const int steps = static_cast<int>(std::lround(s_end / ds));
    std::vector<cplx> f;
    double worst_exact = 0, worst_kernel = 0;
    for (int n = 0; n <= 4; ++n) {
        auto fn = [&](double y) {
            eval_f(y, beta, n, f);
            return f[n];
        };
        std::vector<cplx> q(g.N);
        for (int i = 0; i < g.N; ++i) q[i] = fn(g.y(i));
        const BoundaryFn bc = [&](double s) {
            const double e = std::exp(-0.5 * n * s);
            return std::pair<cplx, cplx>(e * fn(-g.L), e * fn(g.L));
        };
        q = evolve_linear(q, g, beta, ds, steps, Scheme::imex2, 4, bc);
        const double decay = std::exp(-0.5 * n * s_end);
        double scale = 0, err = 0;
        for (int i = 0; i < g.N; ++i) {
            if (std::abs(g.y(i)) > 5 + 1e-9) continue;
            const cplx ex = decay * fn(g.y(i));
            scale = std::max(scale, std::abs(ex));
            err = std::max(err, std::abs(q[i] - ex));
        }
        worst_exact = std::max(worst_exact, err / scale);
        // kernel quadrature at every 25th point of |y| <= 5
        double kerr = 0;
        const double dx = 2e-3;
        std::vector<cplx> fx;
        for (double x = -40; x <= 40 + 1e-12; x += dx) fx.push_back(fn(x));
        for (int i = 0; i < g.N; i += 25) {
            const double y = g.y(i);
            if (std::abs(y) > 5 + 1e-9) continue;
            cplx sum = 0;
            for (size_t k = 0; k < fx.size(); ++k) sum += semigroup_kernel(s_end, y, -40 + k * dx, beta) * fx[k];
            kerr = std::max(kerr, std::abs(q[i] - sum * dx));
        }
        worst_kernel = std::max(worst_kernel, kerr / scale);
    }
    return {worst_exact <= 1e-4 && worst_kernel <= 1e-6,
            "max relative error on |y| <= 5: vs e^{-ns/2} f_n " + num(worst_exact, 3) + " (tol 1e-4), vs kernel quadrature " +
                num(worst_kernel, 3) + " (tol 1e-6)"};
}

// ------------------------------------------------------------------ 8

Verdict c8_rest() {
    const FloatParams P = FloatParams::from(compute_constants(Rational(3), Rational(1)).P);
    std::vector<double> c;
    for (double s : {25.0, 100.0, 400.0}) {
        const EvalContext ctx{P, s, 0};
        double m = 0;
        for (double y = -400; y <= 400; y += 0.01) m = std::max(m, std::abs(rest_R(y, ctx)));
        c.push_back(m * std::sqrt(s));
    }
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    return {std::isfinite(*hi) && *hi / *lo < 2,
            "sup|R| sqrt(s) = " + num(c[0]) + ", " + num(c[1]) + ", " + num(c[2]) + " at s = 25, 100, 400; ratio " +
                num(*hi / *lo)};
}

// ------------------------------------------------------------------ 9

Verdict c9_taylor() {
    const ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    const FloatParams P = FloatParams::from(K.P);
    const TaylorPolys T = taylor_polys(K);
    std::vector<double> c1, c2, cr;
    for (double s : {1e3, 1e4, 1e5}) {
        const EvalContext ctx{P, s, 0};
        const double Y = std::pow(s, 0.25), r = std::sqrt(s);
        double a = 0, b = 0, e = 0;
        for (int i = 0; i <= 4000; ++i) {
            const double y = -Y + 2 * Y * i / 4000;
            const cplx yc(y);
            const Potentials V = potentials(y, ctx);
            const double w6 = (1 + std::pow(y, 6)) / std::pow(s, 1.5), w4 = (1 + std::pow(y, 4)) / std::pow(s, 1.5);
            a = std::max(a, std::abs(V.V1 - T.W11.eval(yc) / r - T.W12.eval(yc) / s) / w6);
            b = std::max(b, std::abs(V.V2 - T.W21.eval(yc) / r - T.W22.eval(yc) / s) / w6);
            e = std::max(e, std::abs(rest_Rstar(y, ctx) - T.Rstar[0].eval(yc) / r - T.Rstar[1].eval(yc) / s) / w4);
        }
        c1.push_back(a);
        c2.push_back(b);
        cr.push_back(e);
    }
    auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi / *lo;
    };
    const double s1 = spread(c1), s2 = spread(c2), s3 = spread(cr);
    return {s1 < 2 && s2 < 2 && s3 < 2,
            "fitted C over s = 1e3, 1e4, 1e5: V1 " + num(c1[0]) + ".." + num(c1[2]) + ", V2 " + num(c2[0]) + ".." +
                num(c2[2]) + ", R* " + num(cr[0]) + ".." + num(cr[2]) + "; spreads " + num(s1, 3) + ", " + num(s2, 3) +
                ", " + num(s3, 3)};
}

// ------------------------------------------------------------------ 10

Verdict c10_shooting() {
    // search at N = 4608, ds = 1e-3; confirmation run at the default N = 9216, ds = 5e-4
    SimConfig search;
    search.N = 4608;
    search.ds = 1e-3;
    const Simulator coarse(search);
    const ShootResult sh = shoot(coarse);

    std::ostringstream os;
    os << "shooting: " << sh.probes.size() << " probes, best (" << num(sh.d0, 6) << ", " << num(sh.d1, 6)
       << ") exit s " << num(sh.exit_s, 6) << (sh.trapped ? " (trapped)" : "") << "; corners cover 4 quadrants: "
       << (sh.corners_cover_quadrants ? "yes" : "no") << ", latest corner exit " << num(sh.corner_max_exit_s, 6);

    const Simulator sim{SimConfig{}};
    InitialDataSpec spec;
    spec.d0_tilde = sh.d0;
    spec.d1_tilde = sh.d1;
    RunOptions opt;
    opt.record_every = 1;
    const RunResult r = run(sim, spec, opt);
    const double At2 = sim.combos().At2, A = sim.config().A;
    const double null_mode = r.last.qt[1 + 1] * r.last.s;
    const bool null_ok = std::abs(null_mode - At2) <= 0.2 * std::abs(At2);

    // envelope C A^{10} s^{-5/4}, C fitted on the first half of the window
    const double mid = 0.5 * (sim.config().s0 + sim.config().s_end);
    double C = 0;
    for (const StepRecord& h : r.history)
        if (h.s <= mid) C = std::max(C, std::abs(h.theta_prime) * std::pow(h.s, 1.25) / std::pow(A, 10));
    bool env_ok = C > 0;
    for (const StepRecord& h : r.history)
        env_ok = env_ok && std::abs(h.theta_prime) <= 2 * C * std::pow(A, 10) / std::pow(h.s, 1.25);

    os << "; confirmation run " << (r.exited ? "left the set at s = " + num(r.exit_s, 6) + " via " + r.exit_component
                                             : "stayed inside up to s = " + num(r.last.s, 6))
       << ", qt2 s = " << num(null_mode, 5) << " vs At2 = " << num(At2, 5) << ", fitted C = " << num(C, 3)
       << (env_ok ? " holds" : " violated");

    const bool full = !r.exited && null_ok && env_ok;
    if (full) return {true, os.str()};
    const bool degraded = sh.exit_s > sh.corner_max_exit_s && sh.corners_cover_quadrants;
    os << "; fallback (s* beats every corner, corner degree pattern): " << (degraded ? "holds" : "fails");
    return {degraded, os.str()};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.insert(std::stoi(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string expect, only;
    app.add_option("--expect-fail", expect, "comma-separated criteria expected to fail");
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<int, std::function<Verdict()>>> all = {
        {1, c1_b_cross_formula}, {2, c2_cancellations}, {3, c3_htilde1}, {4, c4_mu},    {5, c5_formal},
        {6, c6_basis},           {7, c7_linear},        {8, c8_rest},    {9, c9_taylor}, {10, c10_shooting},
    };
    const std::set<int> expected = parse_list(expect), chosen = parse_list(only);
    std::set<int> failed;
    for (const auto& [id, fn] : all) {
        if (!chosen.empty() && !chosen.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) failed.insert(id);
        std::printf("criterion %2d: %s  %s  [%.1f s]\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), dt);
        std::fflush(stdout);
    }
    std::set<int> want;
    for (int id : expected)
        if (chosen.empty() || chosen.count(id)) want.insert(id);
    const bool as_expected = failed == want;
    std::printf("%zu failing; %s\n", failed.size(), as_expected ? "matches the expected set" : "differs from the expected set");
    return as_expected ? 0 : 1;
}
