#include "cgl/tables.hpp"

namespace cgl {

namespace {

Field const_field(const PolyE& p) { return Field{{SKey{0, 0}, p}}; }

Field power_series(const Field& u, const Rational& alpha, int order) {
    Field acc = const_field(PolyE::constant(Ext(1)));
    Field uk = acc;
    for (int k = 1; k <= order; ++k) {
        uk = mul(uk, u, order);
        if (uk.empty()) break;
        acc += uk.scaled(Ext(binomial(Gauss(alpha), k)));
    }
    return acc;
}

}  // namespace

ProfileSeries expand_profile(const ProfileParams& P, int N) {
    const Rational one(1);
    const Rational pm = P.p - one;
    const Ext oid(P.one_i_delta());
    const Gauss gamma = Gauss(-one / pm, -P.delta / pm);
    const Ext c = P.b * Ext(one / pm);

    ProfileSeries S;
    S.order = N;
    // psi_0(z) = (1 + b z^2/(p-1))^gamma with z^2 = eps y^2, then + (1+i delta) a/kappa eps
    Ext ck(1);
    for (int k = 0; k <= N; ++k) {
        S.psi.add_term({k, 0}, PolyE::monomial(2 * k, Ext(binomial(gamma, k)) * ck));
        ck *= c;
    }
    S.psi.add_term({1, 0}, PolyE::constant(oid * P.a_hat()));

    Field u = mul(S.psi, S.psi.conj(), N) - const_field(PolyE::constant(Ext(1)));
    Field A1 = power_series(u, pm / Rational(2), N);               // |psi|^{p-1}
    Field A3 = power_series(u, (P.p - Rational(3)) / Rational(2), N);  // |psi|^{p-3}
    Field one_f = const_field(PolyE::constant(Ext(1)));

    S.V1 = (A1 - one_f).scaled(oid * Ext((P.p + one) / (Rational(2) * pm)));
    S.V2 = (mul(A3, mul(S.psi, S.psi, N), N) - one_f).scaled(oid * Ext(Rational(1, 2)));

    const Ext ib(P.one_i_beta());
    Field R = -ds_eps(S.psi);
    R += S.psi.map([&](const PolyE& v) { return v.derivative().derivative() * ib; });
    R += S.psi.map([](const PolyE& v) { return v.derivative().shifted() * Ext(Rational(-1, 2)); });
    R += S.psi.scaled(-oid * Ext(one / pm));
    R += mul(A1, S.psi, N).scaled(oid * Ext(one / pm));
    S.R = R.truncated(N);
    return S;
}

Field rest_star(const ProfileParams& P, const ProfileSeries& S, const Ext& mu) {
    const Ext I(Gauss::i());
    Scalars phase{{SKey{1, 0}, I * P.nu * Ext(Rational(1, 2))}, {SKey{2, 0}, I * mu}};
    return S.R - mul(phase, S.psi, S.order);
}

Field theta_field(const ProfileSeries& S) { return S.psi.scaled(Ext(Gauss(0, -1))); }

PotentialPolys potential_polys(const ProfileSeries& S) {
    return {S.V1.get(1, 0), S.V1.get(2, 0), S.V2.get(1, 0), S.V2.get(2, 0)};
}

const Ext& CoeffTables::at(const std::string& name, int n, int j) const {
    auto it = t_.find({name, n, j});
    if (it == t_.end()) throw std::out_of_range("coefficient table has no entry " + name + std::to_string(n) + std::to_string(j));
    return it->second;
}

int CoeffTables::kappa_grade(const std::string& name) {
    return (name == "R" || name == "Rt" || name == "Th" || name == "Tht") ? 1 : 0;
}

KappaGraded CoeffTables::graded(const std::string& name, int n, int j) const {
    return KappaGraded(at(name, n, j), kappa_grade(name));
}

void projection_tables(const ProfileParams&, const PotentialPolys& W, const BasisTable& B, CoeffTables& T) {
    const Ext I(Gauss::i());
    auto vmul = [](const PolyE& a, const PolyE& b, const PolyE& P) { return a * P + b * P.conj(); };
    auto put = [&](const std::string& qn, const std::string& qtn, int j, const PolyE& P) {
        auto m = project_poly(P, B);
        for (int n = 0; n <= 6; n += 2) {
            T.set(qn, n, j, m.q[n]);
            T.set(qtn, n, j, m.qt[n]);
        }
    };
    for (int j = 0; j <= 6; j += 2) {
        const PolyE& h = B.h_ext[j];
        const PolyE& ht = B.ht_ext[j];
        put("C", "Ct", j, vmul(W.W11, W.W21, h));
        put("D", "Dt", j, vmul(W.W11, W.W21, ht));
        put("E", "Et", j, vmul(W.W12, W.W22, h));
        put("F", "Ft", j, vmul(W.W12, W.W22, ht));
        put("K", "Kt", j, h * I);
        put("L", "Lt", j, ht * I);
    }
    T.c = B.c;
}

void rest_tables(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B, const Ext& mu, CoeffTables& T) {
    Field Rs = rest_star(P, S, mu);
    Field Th = theta_field(S);
    for (int k = 0; k <= 3; ++k) {
        auto r = project_poly(Rs.get(k + 1, 0), B);
        auto t = project_poly(Th.get(k + 1, 0), B);
        for (int n = 0; n <= 6; n += 2) {
            T.set("R", n, k, r.q[n]);
            T.set("Rt", n, k, r.qt[n]);
            T.set("Th", n, k, t.q[n]);
            T.set("Tht", n, k, t.qt[n]);
        }
    }
}

CoeffTables build_tables(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B, const Ext& mu) {
    CoeffTables T;
    projection_tables(P, potential_polys(S), B, T);
    rest_tables(P, S, B, mu, T);
    return T;
}

PolyE quadratic_B(const ProfileParams& P, const PolyE& q) {
    const Ext oid8 = Ext(P.one_i_delta()) * Ext(Rational(1, 8));
    const PolyE qb = q.conj();
    return (qb * qb * Ext(P.p - Rational(3)) + q * qb * Ext(Rational(2) * (P.p + Rational(1))) +
            q * q * Ext(P.p + Rational(1))) *
           oid8;
}

Field quadratic_B(const ProfileParams& P, const Field& q, int W) {
    const Ext oid8 = Ext(P.one_i_delta()) * Ext(Rational(1, 8));
    const Field qb = q.conj();
    Field r = mul(qb, qb, W).scaled(Ext(P.p - Rational(3)));
    r += mul(q, qb, W).scaled(Ext(Rational(2) * (P.p + Rational(1))));
    r += mul(q, q, W).scaled(Ext(P.p + Rational(1)));
    return r.scaled(oid8);
}

BConstants b_quadratic_constants(const ProfileParams& P, const BasisTable& B, const CoeffTables& T) {
    auto pt2 = [&](const PolyE& v) { return project_poly(v, B).qt[2]; };
    auto pair = [&](const PolyE& u, const PolyE& v) {
        return pt2(quadratic_B(P, u + v) - quadratic_B(P, u) - quadratic_B(P, v));
    };
    const PolyE& h2 = B.h_ext[2];
    const PolyE& ht0 = B.ht_ext[0];
    const PolyE& ht2 = B.ht_ext[2];
    BConstants c;
    c.Bt2 = KappaGraded(pt2(quadratic_B(P, ht2)), -1);
    c.pair_h2h2 = KappaGraded(pt2(quadratic_B(P, h2)), -1);
    c.pair_ht0h2 = KappaGraded(pair(ht0, h2), -1);
    c.pair_ht0ht2 = KappaGraded(pair(ht0, ht2), -1);
    c.pair_h2ht2 = KappaGraded(pair(h2, ht2), -1);
    const KappaGraded R21 = T.graded("R", 2, 1);
    const KappaGraded Rt01 = T.graded("Rt", 0, 1);
    c.B1 = c.pair_h2ht2 * R21 + c.pair_ht0ht2 * (-Rt01);
    c.B2 = c.pair_h2h2 * R21 * R21;
    return c;
}

}  // namespace cgl
