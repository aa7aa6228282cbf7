#include "cgl/output.hpp"

#include "cgl/profilefield.hpp"

#include <iomanip>

namespace cgl {

using nlohmann::json;

std::string version_string() { return CGLAB_VERSION; }

std::string rational_string(const Rational& x) { return x.num().get_str() + "/" + x.den().get_str(); }

json to_json(const Gauss& x) { return {{"re", rational_string(x.re)}, {"im", rational_string(x.im)}}; }

json to_json(const Ext& x) {
    const cplx v = x.to_complex();
    json j = {{"c0", to_json(x.c0())}, {"c1", to_json(x.c1())}, {"approx", {v.real(), v.imag()}}};
    if (x.has_modulus()) j["b2"] = rational_string(x.modulus());
    return j;
}

json to_json(const KappaGraded& x, double kappa) {
    json j = to_json(x.value());
    j["kappa_power"] = x.grade();
    const cplx v = x.to_complex(kappa);
    j["approx"] = {v.real(), v.imag()};
    return j;
}

json to_json(const PolyG& p) {
    json c = json::array();
    for (int k = 0; k <= p.degree(); ++k) c.push_back(to_json(p.coeff(k)));
    return c;
}

json meta_json(const std::string& command, const RunConfig& cfg, double K_resolved) {
    json c = json::object();
    for (const auto& [k, v] : config_entries(cfg, K_resolved)) c[k] = v;
    return {{"version", version_string()}, {"command", command}, {"config", c}};
}

void write_header(std::ostream& os, const std::string& command, const RunConfig& cfg, double K_resolved) {
    os << "# cglab " << version_string() << "\n# command " << command << "\n";
    for (const auto& [k, v] : config_entries(cfg, K_resolved)) os << "# " << k << " = " << v << "\n";
}

json constants_json(const ConstantsBundle& K) {
    const FloatParams F = FloatParams::from(K.P);
    const double kap = F.kappa;
    json j;
    j["params"] = {
        {"p", rational_string(K.P.p)},
        {"delta", rational_string(K.P.delta)},
        {"beta", rational_string(K.P.beta)},
        {"b2", rational_string(K.P.b2)},
        {"pcri2", K.P.pcri2 ? json(rational_string(*K.P.pcri2)) : json(nullptr)},
        {"b", to_json(K.P.b)},
        {"nu", to_json(K.P.nu)},
        {"a", to_json(K.P.a, kap)},
        {"mu", to_json(K.P.mu)},
        {"kappa", kap},
        {"K_default", default_K(F)},
    };
    const OdeCoefficients& o = K.ode;
    j["null_mode_ode"] = {
        {"coef_1_over_s", to_json(o.coef_1_over_s, kap)},
        {"coef_q2_over_sqrt_s", to_json(o.coef_q2_over_sqrt_s, kap)},
        {"coef_q2sq", to_json(o.coef_q2sq, kap)},
        {"coef_s32", to_json(o.coef_s32, kap)},
        {"Htilde1", to_json(o.Htilde1, kap)},
        {"Htilde2", to_json(o.Htilde2, kap)},
    };
    j["mu_solve"] = {
        {"a0", to_json(K.mu.a0, kap)},
        {"a1", to_json(K.mu.a1, kap)},
        {"mu", to_json(K.mu.mu)},
        {"affine", K.mu.affine},
        {"Htilde2_mu_free", K.mu.h2_mu_free},
        {"residual", to_json(K.mu.residual, kap)},
    };
    const ShrinkCombos& c = K.combos;
    j["shrink_combos"] = {
        {"A2", to_json(c.A2, kap)},   {"At0", to_json(c.At0, kap)}, {"At2", to_json(c.At2, kap)},
        {"C2", to_json(c.C2, kap)},   {"Ct0", to_json(c.Ct0, kap)}, {"C4", to_json(c.C4, kap)},
        {"Ct4", to_json(c.Ct4, kap)}, {"B2", to_json(c.B2, kap)},   {"Bt0", to_json(c.Bt0, kap)},
        {"B4", to_json(c.B4, kap)},   {"Bt4", to_json(c.Bt4, kap)}, {"X2", to_json(c.X2, kap)},
        {"Xt0", to_json(c.Xt0, kap)},
    };
    const BConstants& b = K.bq;
    j["quadratic_B"] = {
        {"Bt2", to_json(b.Bt2, kap)},
        {"B1", to_json(b.B1, kap)},
        {"B2", to_json(b.B2, kap)},
    };
    json t = json::array();
    for (const auto& [key, v] : K.T.all()) {
        const auto& [name, n, m] = key;
        json e = to_json(K.T.graded(name, n, m), kap);
        e["name"] = name;
        e["n"] = n;
        e["j"] = m;
        t.push_back(e);
    }
    j["tables"] = t;
    return j;
}

json basis_json(const BasisTable& B) {
    json j;
    j["M"] = B.M;
    j["p"] = rational_string(B.p);
    j["delta"] = rational_string(B.delta);
    j["beta"] = rational_string(B.beta);
    json fs = json::array(), hs = json::array(), hts = json::array(), cs = json::array(), ns = json::array();
    for (int n = 0; n <= B.M; ++n) {
        fs.push_back(to_json(B.f[n]));
        hs.push_back(to_json(B.h[n]));
        hts.push_back(to_json(B.ht[n]));
        cs.push_back(rational_string(B.c[n]));
        ns.push_back(to_json(B.fnorm[n]));
    }
    j["f"] = fs;
    j["h"] = hs;
    j["ht"] = hts;
    j["c"] = cs;
    j["f_norm"] = ns;
    return j;
}

json verify_json(const VerifyReport& r) {
    json checks = json::array();
    for (const Check& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"kind", c.kind == CheckKind::identity ? "identity" : "transcription"},
                          {"status", status_word(c)},
                          {"detail", c.detail}});
    return {{"p", rational_string(r.p)},
            {"delta", rational_string(r.delta)},
            {"identities_pass", r.identities_pass()},
            {"checks", checks}};
}

json shoot_json(const ShootResult& r) {
    json probes = json::array();
    for (const Probe& p : r.probes)
        probes.push_back({{"stage", p.stage},
                          {"d0", p.d0},
                          {"d1", p.d1},
                          {"exited", p.exited},
                          {"exit_s", p.exit_s},
                          {"component", p.component},
                          {"phi", {p.phi.phi0, p.phi.phi1}}});
    return {{"best", {{"d0", r.d0}, {"d1", r.d1}, {"exit_s", r.exit_s}, {"trapped", r.trapped}}},
            {"cell_found", r.cell_found},
            {"refined", r.refined},
            {"bisection_levels", r.levels},
            {"corner_quadrants", r.corner_quadrant},
            {"corners_cover_quadrants", r.corners_cover_quadrants},
            {"corner_max_exit_s", r.corner_max_exit_s},
            {"probes", probes}};
}

std::vector<std::string> history_columns(int M) {
    std::vector<std::string> c = {"s", "theta", "theta_prime"};
    for (int n = 0; n <= M; ++n) c.push_back("q" + std::to_string(n));
    for (int n = 0; n <= M; ++n) c.push_back("qt" + std::to_string(n));
    for (const char* s : {"Qt0", "Q2", "Qt2", "Q4", "Qt4", "qe_norm", "qminus_norm", "VA_flags"}) c.push_back(s);
    return c;
}

void write_history_csv(std::ostream& os, const std::vector<StepRecord>& hist, int M) {
    const auto cols = history_columns(M);
    const auto names = bound_names(M);
    for (size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << "\n" << std::setprecision(17);
    for (const StepRecord& r : hist) {
        os << r.s << "," << r.theta << "," << r.theta_prime;
        for (int n = 0; n <= M; ++n) os << "," << r.q[n];
        for (int n = 0; n <= M; ++n) os << "," << r.qt[n];
        os << "," << r.Qt0 << "," << r.Q2 << "," << r.Qt2 << "," << r.Q4 << "," << r.Qt4 << "," << r.qe_norm << ","
           << r.qminus_norm << ",";
        // names of the violated bounds, '|'-separated; empty inside the set
        bool first = true;
        for (size_t k = 0; k < r.ratios.size(); ++k) {
            if (r.ratios[k] <= 1) continue;
            os << (first ? "" : "|") << names[k];
            first = false;
        }
        os << "\n";
    }
}

void write_profile_csv(std::ostream& os, const FloatParams& P, double s, double L, int N) {
    os << "y,phi_re,phi_im,abs_phi,R_re,R_im,Rstar_re,Rstar_im,V1_re,V1_im,V2_re,V2_im\n" << std::setprecision(17);
    const EvalContext ctx{P, s, 0};
    for (int i = 0; i < N; ++i) {
        const double y = N > 1 ? -L + 2 * L * i / (N - 1) : 0.0;
        const cplx f = phi(y, ctx), R = rest_R(y, ctx), Rs = rest_Rstar(y, ctx);
        const Potentials V = potentials(y, ctx);
        os << y << "," << f.real() << "," << f.imag() << "," << std::abs(f) << "," << R.real() << "," << R.imag() << ","
           << Rs.real() << "," << Rs.imag() << "," << V.V1.real() << "," << V.V1.imag() << "," << V.V2.real() << ","
           << V.V2.imag() << "\n";
    }
}

}  // namespace cgl
