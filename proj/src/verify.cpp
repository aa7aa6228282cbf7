#include "cgl/verify.hpp"

#include "cgl/formal.hpp"
#include "cgl/transcribed.hpp"

#include <sstream>

namespace cgl {

bool VerifyReport::identities_pass() const {
    for (const auto& c : checks)
        if (c.kind == CheckKind::identity && !c.ok) return false;
    return true;
}

int VerifyReport::count(CheckKind kind, bool ok) const {
    int n = 0;
    for (const auto& c : checks)
        if (c.kind == kind && c.ok == ok) ++n;
    return n;
}

std::string status_word(const Check& c) {
    if (c.kind == CheckKind::identity) return c.ok ? "PASS" : "FAIL";
    return c.ok ? "MATCH" : "MISMATCH";
}

namespace {

// polynomial text is one term per line; keep each check on a single line
template <class T>
std::string one_line(const T& v) {
    std::string t = to_text(v);
    while (!t.empty() && t.back() == '\n') t.pop_back();
    for (std::size_t i = 0; (i = t.find('\n', i)) != std::string::npos;) t.replace(i, 1, " + ");
    return t;
}

class Collector {
public:
    explicit Collector(std::vector<Check>& out) : out_(out) {}

    void identity(std::string name, bool ok, std::string detail = {}) {
        out_.push_back({std::move(name), CheckKind::identity, ok, std::move(detail)});
    }
    void transcription(std::string name, bool ok, std::string detail = {}) {
        out_.push_back({std::move(name), CheckKind::transcription, ok, std::move(detail)});
    }
    template <class T>
    void zero(std::string name, const T& v) {
        identity(std::move(name), v.is_zero(), "residual " + one_line(v));
    }
    template <class T>
    void equal(std::string name, const T& computed, const T& other) {
        identity(std::move(name), computed == other, "computed " + one_line(computed) + " vs " + one_line(other));
    }
    template <class T>
    void printed(std::string name, const T& computed, const T& shown) {
        transcription(std::move(name), computed == shown, "computed " + one_line(computed) + " printed " + one_line(shown));
    }

private:
    std::vector<Check>& out_;
};

std::string table_name(const std::string& n, int i, int j) {
    return n + "_" + std::to_string(i) + std::to_string(j);
}

Gauss weighted_inner(const PolyG& a, const PolyG& b, const Rational& beta) {
    const PolyG ab = a * b;
    Gauss s;
    for (int k = 0; k <= ab.degree(); k += 2) s += ab.coeff(k) * gaussian_moment(k, beta);
    return s;
}

void basis_checks(Collector& c, const BasisTable& B) {
    bool eig = true, jordan = true, orth = true, cform = true;
    for (int n = 0; n <= B.M; ++n) {
        const PolyG Lh = apply_L(B.h[n], LVariant::beta_delta, B.beta, B.delta);
        if (!(Lh == B.h[n] * Gauss(Rational(-n, 2)))) eig = false;
        PolyG rhs = B.ht[n] * Gauss(Rational(2 - n, 2));
        if (n >= 2) rhs += B.h[n - 2] * Gauss(B.c[n]);
        if (!(apply_L(B.ht[n], LVariant::beta_delta, B.beta, B.delta) == rhs)) jordan = false;
        if (!(apply_L(B.f[n], LVariant::beta, B.beta, B.delta) == B.f[n] * Gauss(Rational(-n, 2)))) eig = false;
        const Rational expect = Rational(n) * Rational(n - 1) * B.beta * (Rational(1) + B.delta * B.delta);
        if (!(B.c[n] == expect)) cform = false;
    }
    const int nmax = std::min(B.M, 10);
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m < n; ++m)
            if (!weighted_inner(B.f[n], B.f[m], B.beta).is_zero()) orth = false;
    c.identity("basis eigenrelations L_beta f_n = -n/2 f_n, L h_n = -n/2 h_n (n <= " + std::to_string(B.M) + ")", eig);
    c.identity("basis Jordan relations L ht_n = (1-n/2) ht_n + c_n h_{n-2}", jordan);
    c.identity("basis orthogonality of f_n, n, m <= " + std::to_string(nmax), orth);
    c.identity("c_n = n(n-1) beta (1+delta^2)", cform,
               "c_2 = " + B.c[2].str() + (B.beta * (Rational(1) + B.delta * B.delta) == Rational(1)
                                              ? " (coincides with n(n-1) here)"
                                              : "; the form n(n-1) does not hold"));
    for (int n : {2, 4, 6}) {
        const PolyG h = printed::basis_h(n, B.beta, B.delta), ht = printed::basis_ht(n, B.beta, B.delta);
        c.printed("printed h_" + std::to_string(n), B.h[n], h);
        c.printed("printed ht_" + std::to_string(n), B.ht[n], ht);
    }
}

}  // namespace

VerifyReport verify_all(const Rational& p, const Rational& delta) {
    VerifyReport rep;
    rep.p = p;
    rep.delta = delta;
    Collector c(rep.checks);

    const ConstantsBundle K = compute_constants(p, delta);
    const ProfileParams& P = K.P;
    const CoeffTables& T = K.T;
    const Rational one(1);

    // ------------------------------------------------------------ parameters
    c.zero("critical condition p - delta^2 - beta delta (p+1)", Ext(p - delta * delta - P.beta * delta * (p + one)));
    c.identity("b^2 > 0", P.b2.sign() > 0, "b^2 = " + P.b2.str());
    c.printed("b^2 against the formal-approach formula", P.b2, printed::b2_formal(p, delta));
    if (p == Rational(3)) c.printed("b^2 against the p = 3 closed form", P.b2, printed::b2_p3(delta));

    // ------------------------------------------------------------ basis
    basis_checks(c, K.B);

    // ------------------------------------------------------------ tables
    {
        bool real = true;
        std::string bad;
        for (const auto& [key, v] : T.all())
            if (!v.is_real()) {
                real = false;
                bad = table_name(std::get<0>(key), std::get<1>(key), std::get<2>(key));
            }
        c.identity("all projection and rest table entries are real", real, bad.empty() ? "" : "first complex entry " + bad);
    }
    {
        const PotentialPolys W = potential_polys(K.S);
        const PotentialPolys Wl = printed::potentials_compact(P), Wa = printed::potentials_expanded(P);
        c.printed("W11", W.W11, Wl.W11);
        c.printed("W12", W.W12, Wl.W12);
        c.printed("W21", W.W21, Wl.W21);
        c.printed("W22 (compact form)", W.W22, Wl.W22);
        c.printed("W22 (expanded form)", W.W22, Wa.W22);
    }
    for (const auto& [key, v] : printed::projection_constants(P)) {
        const auto& [n, i, j] = key;
        c.printed("printed " + table_name(n, i, j), KappaGraded(T.at(n, i, j), CoeffTables::kappa_grade(n)),
                  KappaGraded(v, CoeffTables::kappa_grade(n)));
    }
    for (const auto& [key, v] : printed::rest_constants(P, P.mu)) {
        const auto& [n, i, j] = key;
        c.printed("printed " + table_name(n, i, j), KappaGraded(T.at(n, i, j), 1), KappaGraded(v, 1));
    }
    {
        const Field Rs = rest_star(P, K.S, P.mu);
        for (const auto& [key, v] : printed::rest_polynomials(P, P.mu))
            c.printed("printed y^" + std::to_string(key.second) + " coefficient of R*_" + std::to_string(key.first),
                      KappaGraded(Rs.get(key.first + 1, 0).coeff(key.second), 1), KappaGraded(v, 1));
        c.printed("printed y^4 coefficient of R*_2 (second form)", KappaGraded(Rs.get(3, 0).coeff(4), 1),
                  KappaGraded(printed::rest_r2_y4_alternative(P), 1));
    }
    {
        // the mu-dependence of R* is carried by Theta: d/dmu R*_{n,k} = Theta_{n,k-2}
        CoeffTables T0, T1;
        rest_tables(P, K.S, K.B, Ext(0), T0);
        rest_tables(P, K.S, K.B, Ext(1), T1);
        bool ok = true;
        for (int n = 0; n <= 6; n += 2)
            for (int k = 0; k <= 3; ++k)
                for (const char* nm : {"R", "Rt"}) {
                    const bool untilded = nm == std::string("R");
                    const Ext dmu = T1.at(nm, n, k) - T0.at(nm, n, k);
                    // at k = 1 the mu term meets the leading -i, whose only mode is q_0 = -1
                    Ext th;
                    if (k >= 2) th = T.at(untilded ? "Th" : "Tht", n, k - 2);
                    else if (k == 1 && n == 0 && untilded) th = Ext(-1);
                    if (!(dmu == th)) ok = false;
                }
        c.identity("mu enters R*_{n,k} only through -i mu psi", ok);
    }

    // ------------------------------------------------------------ B(q)
    c.zero("Bt_2 + c_2 delta / kappa", K.bq.Bt2 + KappaGraded(Ext(T.c[2] * delta), -1));
    c.printed("printed Bt_2", K.bq.Bt2, printed::btilde2(P));
    {
        const KappaGraded R21 = T.graded("R", 2, 1);
        c.printed("printed B_2 / (R*_21)^2", K.bq.pair_h2h2, printed::b2_over_r21sq(P));
        c.equal("B_2 = pair(h2,h2) (R*_21)^2", K.bq.B2, K.bq.pair_h2h2 * R21 * R21);
    }

    // ------------------------------------------------------------ ODE of the null mode
    c.zero("coefficient of 1/s (Rt*_21)", K.ode.coef_1_over_s);
    c.zero("coefficient of q~_2/sqrt(s)", K.ode.coef_q2_over_sqrt_s);
    c.zero("coefficient of q~_2^2", K.ode.coef_q2sq);
    c.zero("coefficient of 1/s^{3/2}", K.ode.coef_s32);
    {
        const BRoot r = b2_from_s32(P);
        c.identity("s^{-3/2} coefficient is b (alpha + gamma b^2)", r.affine,
                   "alpha = " + r.alpha.str() + ", gamma = " + r.gamma.str());
        c.equal("b^2 root of the s^{-3/2} coefficient = b_cri^2", r.root, P.b2);
    }
    const printed::OdeExpressions ex = printed::ode_expressions(P, T, K.bq, K.combos.X2, K.combos.Xt0);
    c.equal("long Ht_1 expression on computed tables = reduced Ht_1", ex.Htilde1, K.ode.Htilde1);
    c.equal("long Ht_2 expression on computed tables = reduced Ht_2", ex.Htilde2, K.ode.Htilde2);
    c.zero("long q~_2/sqrt(s) expression on computed tables", ex.coef_q2_over_sqrt_s);
    c.zero("long q~_2^2 expression on computed tables", ex.coef_q2sq);
    c.zero("long 1/s^{3/2} expression on computed tables", ex.coef_s32);
    {
        const KappaGraded h1 = K.ode.Htilde1;
        const Rational v = h1.value().c0().re;
        c.identity("Ht_1 is rational", h1.value().c1().is_zero() && h1.value().c0().im.is_zero(), "Ht_1 = " + to_text(h1));
        c.identity("Ht_1 <= -3/2", v <= Rational(-3, 2), "Ht_1 = " + v.str());
        c.printed("printed closed form of Ht_1", v, printed::htilde1_closed(p, delta));
        for (int f = 0; f < 3; ++f)
            c.printed("printed Ht_1 + 3/2, form " + std::to_string(f + 1), v + Rational(3, 2), printed::htilde1_gap(p, delta, f));
        const CoeffTables Tp = printed::with_printed_entries(P, T);
        const printed::OdeExpressions exp = printed::ode_expressions(P, Tp, K.bq, K.combos.X2, K.combos.Xt0);
        c.identity("closed form of Ht_1 = long expression on printed tables",
                   exp.Htilde1 == KappaGraded(Ext(printed::htilde1_closed(p, delta))),
                   "long expression on printed tables " + to_text(exp.Htilde1));
    }

    // ------------------------------------------------------------ mu_cri
    {
        const MuResult& m = K.mu;
        c.identity("a_0 != 0", !m.a0.is_zero(), "a_0 = " + to_text(m.a0) + ", a_1 = " + to_text(m.a1));
        c.identity("1/s^2 coefficient is affine in mu", m.affine);
        c.identity("Ht_2 does not depend on mu", m.h2_mu_free);
        c.identity("mu_cri is real", m.mu.is_real() && m.mu.c1().is_zero(), "mu_cri = " + to_text(m.mu));
        c.zero("1/s^2 coefficient of the Q~_2 equation at mu_cri", m.residual);
    }

    // ------------------------------------------------------------ shrinking-set combinations
    {
        const ShrinkCombos a = K.combos, b = combos_from_reduction(P, K.red, T);
        const std::pair<const char*, KappaGraded ShrinkCombos::*> fields[] = {
            {"A_2", &ShrinkCombos::A2},   {"At_0", &ShrinkCombos::At0}, {"At_2", &ShrinkCombos::At2},
            {"C_2", &ShrinkCombos::C2},   {"Ct_0", &ShrinkCombos::Ct0}, {"C_4", &ShrinkCombos::C4},
            {"Ct_4", &ShrinkCombos::Ct4}, {"B_2", &ShrinkCombos::B2},   {"Bt_0", &ShrinkCombos::Bt0},
            {"B_4", &ShrinkCombos::B4},   {"Bt_4", &ShrinkCombos::Bt4}, {"X_2 (reconstructed)", &ShrinkCombos::X2},
            {"Xt_0 (reconstructed)", &ShrinkCombos::Xt0}};
        for (const auto& [name, f] : fields)
            c.equal(std::string("combination ") + name + ": definition = slaved-mode series", a.*f, b.*f);
    }

    // ------------------------------------------------------------ formal derivation
    {
        const FormalResult F = formal_run(p, delta);
        c.identity("formal: R1 solves its equation", F.r1_equation);
        c.identity("formal: phi1 solves its equation", F.phi1_equation);
        c.identity("formal: P vanishes at b_cri", F.P.is_zero(), to_text(F.P));
        c.identity("formal: P assembled from Q_{a,b} = residue", F.P_from_Q == F.P, to_text(F.P_from_Q));
        for (const auto& [key, v] : F.Q_printed) {
            auto it = F.Q.find(key);
            const Aff got = it == F.Q.end() ? Aff() : it->second;
            c.transcription("formal: printed Q_" + std::to_string(key.first) + std::to_string(key.second), got == v,
                            "computed " + to_text(got) + " printed " + to_text(v));
        }
        const FormalB2 r = formal_b2(p, delta);
        c.identity("formal: P is free of C", r.c_free);
        c.identity("formal: P/b is affine in b^2", r.affine, "alpha = " + r.alpha.str() + ", gamma = " + r.gamma.str());
        c.equal("formal: b^2 root = b_cri^2", r.root, P.b2);
        const FormalMu m = formal_mu(p, delta);
        c.printed("formal: printed first three pieces of F4(0)", m.first_three, m.first_three_printed);
        c.printed("formal: printed R2 piece of F4(0)", m.r2_term, m.r2_term_printed);
        c.printed("formal: printed tail piece of F4(0)", m.tail, m.tail_printed);
        c.transcription("formal: printed mu formula", m.regenerated == m.printed,
                        "computed " + to_text(m.regenerated) + " printed " + to_text(m.printed));
    }
    return rep;
}

}  // namespace cgl
