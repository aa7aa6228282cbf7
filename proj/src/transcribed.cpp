#include "cgl/transcribed.hpp"

namespace cgl::printed {

namespace {

Ext q(long n, long d = 1) { return Ext(Rational(n, d)); }
Ext q(const Rational& r) { return Ext(r); }
Ext g(const Rational& re, const Rational& im) { return Ext(Gauss(re, im)); }

struct Sym {
    Rational p, d, be;
    Ext P, D, B, b, nu, a, oid, I;
    explicit Sym(const ProfileParams& pp)
        : p(pp.p), d(pp.delta), be(pp.beta), P(pp.p), D(pp.delta), B(pp.beta), b(pp.b), nu(pp.nu),
          a(pp.a_hat()), oid(pp.one_i_delta()), I(Gauss::i()) {}
    Ext pm(int k) const { return q((p - Rational(1)).pow(k)); }
};

PolyG poly(std::initializer_list<Gauss> c) { return PolyG(std::vector<Gauss>(c)); }

PolyE quartic(const Ext& c0, const Ext& c2, const Ext& c4) { return PolyE(std::vector<Ext>{c0, Ext(), c2, Ext(), c4}); }

}  // namespace

Rational b2_formal(const Rational& p, const Rational& d) {
    const Rational d2 = d * d, d4 = d2 * d2;
    const Rational L = (p * p + p - Rational(6)) * d4 + p * (p * p - Rational(10) * p + Rational(1)) * d2 +
                       p * p * (Rational(-6) * p * p + p + Rational(1));
    return (p - Rational(1)).pow(4) * (p + Rational(1)).pow(2) * d2 / (Rational(-16) * (Rational(1) + d2) * L);
}

Rational b2_p3(const Rational& d) {
    const Rational d2 = d * d;
    // b = 2 (sqrt(3/(2 delta^2) (delta^2+5)(delta^2+1)(15-delta^2)))^{-1}
    return Rational(4) / (Rational(3, 2) / d2 * (d2 + Rational(5)) * (d2 + Rational(1)) * (Rational(15) - d2));
}

namespace {

Rational h1_denominator(const Rational& p, const Rational& d) {
    const Rational d2 = d * d, d4 = d2 * d2;
    return (-p + Rational(6) - p * p) * d4 + (-p + Rational(10) * p * p - p.pow(3)) * d2 - p * p + Rational(6) * p.pow(4) -
           p.pow(3);
}

}  // namespace

Rational htilde1_closed(const Rational& p, const Rational& d) {
    const Rational d2 = d * d;
    const Rational num = d2.pow(4) + (Rational(1) - Rational(2) * p) * d2.pow(3) +
                         (Rational(36) - Rational(8) * p - Rational(5) * p * p) * d2.pow(2) +
                         (Rational(-6) * p + Rational(61) * p * p - Rational(6) * p.pow(3)) * d2 + Rational(36) * p.pow(4) -
                         Rational(6) * p.pow(3) - Rational(6) * p * p;
    return Rational(-1, 4) * num / h1_denominator(p, d);
}

Rational htilde1_gap(const Rational& p, const Rational& d, int form) {
    const Rational d2 = d * d, one(1);
    switch (form) {
    case 0: {
        Rational num = d2 * (d2.pow(3) + d2.pow(2) - Rational(2) * d2.pow(2) * p + p * p * d2 - Rational(2) * p * d2 + p * p);
        return Rational(-1, 4) * num / h1_denominator(p, d);
    }
    case 1:
        return Rational(-1, 4) * d2 * (one + d2) * (d2 - p).pow(2) / h1_denominator(p, d);
    case 2:
        return Rational(1, 4) * d2 * (one + d2) * (d2 - p).pow(2) /
               (((p - Rational(2)) * d2 - p * (Rational(2) * p - one)) * ((p + Rational(3)) * d2 + p * (Rational(3) * p + one)));
    default:
        throw std::invalid_argument("htilde1_gap: form must be 0, 1 or 2");
    }
}

bool has_basis_entry(int n) { return n == 0 || n == 1 || n == 2 || n == 4 || n == 6; }

PolyG basis_h(int n, const Rational& be, const Rational& d) {
    const Rational b2 = be * be, b3 = b2 * be, d2 = d * d, bd = be * d;
    switch (n) {
    case 0:
        return poly({Gauss(0, 1)});
    case 1:
        return poly({Gauss(), Gauss(0, 1)});
    case 2:
        return poly({Gauss(be, -(Rational(2) + d * be)), Gauss(), Gauss(0, 1)});
    case 4: {
        Gauss c2(Rational(6) * be, Rational(-6) * (Rational(2) + bd));
        Gauss c0(Rational(-4) * be * (Rational(3) + bd), Rational(12) - Rational(6) * b2 + Rational(12) * bd + Rational(2) * b2 * d2);
        return poly({c0, Gauss(), c2, Gauss(), Gauss(0, 1)});
    }
    case 6: {
        Gauss c4(Rational(15) * be, Rational(-15) * (Rational(2) + bd));
        Gauss c2(Rational(-60) * be * (Rational(3) + d * be),
                 Rational(-90) * b2 + Rational(180) + Rational(180) * bd + Rational(30) * b2 * d2);
        Gauss c0(Rational(180) * be + Rational(120) * d * b2 - Rational(45) * b3 + Rational(15) * b3 * d,
                 Rational(-180) * bd + Rational(55) * d * b3 - Rational(60) * d2 * b2 - Rational(5) * b3 * d2 + Rational(180) * b2 -
                     Rational(120));
        return poly({c0, Gauss(), c2, Gauss(), c4, Gauss(), Gauss(0, 1)});
    }
    default:
        throw std::invalid_argument("no printed h_" + std::to_string(n));
    }
}

PolyG basis_ht(int n, const Rational& be, const Rational& d) {
    const Rational one(1), b2 = be * be, d2 = d * d, bd = be * d, od2 = one + d2;
    const Gauss oid(one, d);
    switch (n) {
    case 0:
        return poly({oid});
    case 1:
        return poly({Gauss(), oid});
    case 2:
        return poly({oid * Gauss(Rational(-2) + Rational(2) * bd), Gauss(), oid});
    case 4: {
        Gauss c2(Rational(12) * (bd - one), Rational(0));
        Gauss c0(Rational(6) * b2 * od2 - Rational(12) * (bd - one),
                 Rational(-6) * b2 * d * (Rational(3) * d2 + Rational(7)) - Rational(12) * d * (bd + one));
        return poly({c0, Gauss(), c2, Gauss(), oid});
    }
    case 6: {
        Gauss c4(Rational(30) * (bd - one), Rational(0));
        Gauss c2(Rational(90) * b2 * od2 - Rational(180) * (bd - one),
                 Rational(-90) * be * od2 * (Rational(3) * bd + Rational(4)) + Rational(180) * (bd - one) * (d - Rational(2) * be));
        Gauss c0(Rational(-20) * b2 * od2 * (Rational(11) * bd + Rational(21)) +
                     Rational(120) * (bd - one) * (Rational(-2) * b2 + bd + one),
                 Rational(270) * be * od2 * (Rational(2) + bd) +
                     b2 * od2 * (Rational(140) * be * d2 - Rational(180) * bd + Rational(390) * d) +
                     Rational(60) * (bd - one) * (Rational(2) * b2 * d - be * d2 + Rational(9) * be - Rational(4) * d));
        return poly({c0, Gauss(), c2, Gauss(), c4, Gauss(), oid});
    }
    default:
        throw std::invalid_argument("no printed ht_" + std::to_string(n));
    }
}

namespace {

PotentialPolys potentials(const ProfileParams& pp, bool expanded) {
    const Sym s(pp);
    const Ext one(1), two(2);
    const Ext omdb = one - s.D * s.B;  // 1 - delta beta
    const Ext bb = s.b * s.b;
    PotentialPolys W;
    const PolyE quad{-two * omdb, Ext(), one};  // y^2 - 2(1 - delta beta)
    W.W11 = quad * (-(s.P + one) * s.b * s.oid / (two * s.pm(2)));
    W.W21 = quad * (-s.oid * s.b / (two * s.pm(2)) * g(s.p - Rational(1), Rational(2) * s.d));
    const Ext k = s.P - two + s.D * s.D;
    W.W12 = quartic(two * k * omdb * omdb, -two * omdb * k, s.P - one) * (s.oid * bb * (s.P + one) / (two * s.pm(4)));

    const Rational p = s.p, d = s.d, d2 = d * d;
    Ext c2 = -g(Rational(2) * (p - Rational(1)) * (p - Rational(2)) + (Rational(2) * p - Rational(10)) * d2,
                (Rational(8) * p - Rational(16)) * d) *
             omdb;
    Ext c0 = omdb * g(Rational(2) * p * p + Rational(4) - Rational(10) * d2 - Rational(6) * p + Rational(2) * p * d2,
                      Rational(8) * p * d - Rational(16) * d);
    Ext c4;
    if (expanded) {
        c0 *= omdb;
        c4 = g(p - Rational(1), Rational(2) * d) * g(p - Rational(1), d);
    } else {
        c4 = g(p - Rational(2), Rational(2) * d) * g(p - Rational(1), d);
    }
    W.W22 = quartic(c0, c2, c4) * (s.oid * bb / (two * s.pm(4)));
    return W;
}

}  // namespace

PotentialPolys potentials_compact(const ProfileParams& P) { return potentials(P, false); }
PotentialPolys potentials_expanded(const ProfileParams& P) { return potentials(P, true); }

TableMap projection_constants(const ProfileParams& pp) {
    const Sym s(pp);
    const Ext& P = s.P;
    const Ext& D = s.D;
    const Ext& be = s.B;
    const Ext& b = s.b;
    const Ext m = -b / (q(2) * s.pm(2));
    const Ext m2 = b * b / (q(2) * s.pm(4));
    const Ext D2 = D * D, D3 = D2 * D, D4 = D2 * D2, D5 = D4 * D, be2 = be * be;
    auto k = [](long v) { return q(v); };

    TableMap t;
    t[{"Dt", 4, 2}] = b * (D2 - P) / s.pm(2);
    t[{"D", 2, 2}] = m * (k(-24) * P * D + k(56) * D3 + k(64) * D2 * be + k(32) * D + k(24) * P * D2 * be + k(40) * D4 * be);
    t[{"Dt", 2, 2}] = b * (k(4) * D * be * (k(1) + D2) / (P - k(1)));
    t[{"Lt", 2, 4}] = k(6) * D2 * be - k(12) * D - k(6) * be;
    t[{"D", 4, 2}] = b * (k(-2) * D * (k(1) + D2) / s.pm(2));
    t[{"Dt", 2, 0}] = b * (-(k(2) * P - k(2) * D2) / (k(2) * s.pm(2)));
    t[{"Lt", 0, 2}] = k(-2) * D + D2 * be - be;
    t[{"Dt", 0, 2}] = m * (k(-32) * D * be - k(12) * P * be2 + k(12) * D2 * be2 - k(16) * D2 + k(16) * P - k(4) * D4 * be2 +
                           k(4) * P * D2 * be2 - k(32) * P * D * be);
    t[{"Ct", 2, 2}] = m * (k(-14) * D2 * be + k(2) * P * be - k(12) * be);
    t[{"Ct", 2, 4}] = m * (k(96) * P * be + k(224) * D3 * be2 - k(288) * D2 * be - k(128) * P * D * be2 - k(192) * be +
                           k(96) * D * be2);
    t[{"Dt", 2, 4}] = m * (k(-96) * P * D2 * be2 - k(168) * P * D * be + k(96) * P - k(528) * D * be - k(96) * D2 +
                           k(216) * D2 * be2 - k(168) * P * be2 + k(144) * D4 * be2 - k(360) * D3 * be);
    t[{"Ft", 2, 2}] = m2 * (k(-240) * P + k(276) * P * P - k(312) * P * D2 - k(204) * D4 +
                            (k(-288) * P - k(552) * P * P + k(696)) * D * be + (k(432) - k(144) * P) * D3 * be +
                            k(144) * D5 * be + (k(180) * P - k(180) * P * P) * be2 +
                            (k(96) * P * P + k(288) * P - k(96)) * D2 * be2 + (k(108) + k(36) * P) * D4 * be2);
    t[{"D", 0, 2}] = m * (k(32) * D + k(24) * D5 * be2 + k(64) * D2 * be + k(48) * D3 * be2 + k(64) * D4 * be + k(32) * D3 +
                          k(24) * D * be2 + k(96) * P * D3 * be2 + k(96) * P * D * be2);
    t[{"L", 0, 2}] = k(4) * D * be + k(4) * D3 * be;
    // Theta constants, divided by kappa
    t[{"Th", 0, 0}] = b * (k(4) * (k(1) + D2) * D * be / s.pm(2));
    t[{"Tht", 0, 0}] = b * (-be * (k(1) + D2) / s.pm(2));
    t[{"Tht", 2, 0}] = b * (-D / s.pm(2));
    t[{"Th", 2, 0}] = b * ((k(1) + D2) / s.pm(2));
    t[{"Tht", 2, 1}] = k(-3) * D * (P + k(1)) * (-be2 + be * D - k(2)) * b * b / s.pm(4);
    return t;
}

TableMap rest_constants(const ProfileParams& pp, const Ext& mu) {
    const Sym s(pp);
    const Ext& P = s.P;
    const Ext& D = s.D;
    const Ext& be = s.B;
    const Ext& b = s.b;
    const Ext& nu = s.nu;
    const Ext& a = s.a;
    auto k = [](long v) { return q(v); };
    const Ext D2 = D * D, b2 = b * b, b3 = b2 * b, be2 = be * be;

    TableMap r;
    r[{"Rt", 0, 0}] = a - k(2) * (k(1) - be * D) * b / s.pm(2);
    r[{"R", 0, 0}] = nu / k(2) - k(2) * be * (k(1) + D2) * b / s.pm(2);
    r[{"Rt", 2, 1}] = (k(2) * (D2 - P) * a * b - D * nu * b) / (k(2) * s.pm(2));
    r[{"R", 2, 1}] = (k(1) + D2) / (k(2) * s.pm(2)) * (nu * b - k(4) * D * a * b) +
                     k(6) * (P + k(1)) * D * (k(1) + be2) * b2 / s.pm(4);
    r[{"Rt", 0, 1}] = (a * a * (P - D2) + D * nu * a) / k(2) + (k(1) - D * be) * (k(2) * (D2 - P) * a * b - D * nu * b) / s.pm(2) -
                      (k(1) + D2) / (k(2) * s.pm(2)) * be * (nu * b - k(4) * D * a * b) -
                      k(6) * (P + k(1)) * D * be * (k(1) + be2) * b2 / s.pm(4);
    r[{"R", 0, 1}] = (k(1) + D * be) * (k(1) + D2) * (nu * b - k(4) * D * a * b) / s.pm(2) +
                     k(12) * (P + k(1)) * D * (k(1) + D * be) * (k(1) + be2) * b2 / s.pm(4) +
                     (k(1) + D2) * (k(8) * D * a * a - k(4) * nu * a) / k(8) - mu;
    r[{"Rt", 2, 2}] = k(5) * (P + k(1)) * D * (k(1) + be2) * b3 / s.pm(6) * (k(12) * D - k(6) * D2 * be + k(6) * (k(2) * P - k(1)) * be) +
                      nu * (P + k(1)) * D * b2 / (k(4) * s.pm(4)) * (k(12) - k(6) * D * be + k(6) * be2) +
                      a * b2 / (k(2) * s.pm(4)) *
                          (k(24) * P * P - k(24) * P + (k(30) - k(6) * P - k(24) * P * P) * D * be - k(24) * P * D2 -
                           k(24) * D2 * D2 + (k(18) - k(6) * P) * D2 * D * be + k(12) * D2 * D2 * D * be) -
                      b / (k(2) * s.pm(2)) - mu * D * b / s.pm(2) -
                      a * a * b / (k(8) * s.pm(2)) * (k(4) * P * P - k(8) * P - k(12) * D2 * D2);
    return r;
}

std::map<std::pair<int, int>, Ext> rest_polynomials(const ProfileParams& pp, const Ext& mu) {
    const Sym s(pp);
    const Rational p = s.p, d = s.d, one(1);
    const Ext& P = s.P;
    const Ext& D = s.D;
    const Ext& be = s.B;
    const Ext& b = s.b;
    const Ext& nu = s.nu;
    const Ext& a = s.a;
    const Ext& I = s.I;
    const Ext& oid = s.oid;
    auto k = [](long v) { return q(v); };
    const Ext D2 = D * D, b2 = b * b, b3 = b2 * b, omid = g(one, -d);

    std::map<std::pair<int, int>, Ext> pol;
    pol[{1, 0}] = oid * ((a * a * (P - D2) + D * nu * a) / k(2)) + I * ((k(1) + D2) * (k(8) * D * a * a - k(4) * nu * a) / k(8) - mu);
    pol[{1, 2}] = I * oid * nu * b / (k(2) * s.pm(2)) + I * k(6) * (P + k(1)) * D * (k(1) + be * be) * b2 / s.pm(4) +
                  oid * (oid * a * (P + k(1)) / (k(2) * (P - k(1))) * (-b / (P - k(1)))) +
                  omid * a / k(2) * (-g(p - one, Rational(2) * d) * b / s.pm(2));
    const Ext br = -(P - k(3)) * omid * omid * g(p - Rational(2), Rational(3) * d) -
                   k(2) * (P + k(1)) * (k(1) + D2) * g(p - Rational(2), d) - (P + k(1)) * oid * oid * g(p - Rational(2), -d);
    pol[{2, 2}] = -oid * b / (k(2) * s.pm(2)) + I * mu * oid * b / s.pm(2) + oid * a * a * b / (k(8) * s.pm(2)) * br;
    pol[{2, 4}] = k(5) * (P + k(1)) * D * (k(1) + be * be) * b3 / s.pm(6) * g(d, -(Rational(2) * p - one)) +
                  nu * (P + k(1)) * D * b2 / (k(4) * s.pm(4)) * g(one, -s.be) +
                  a * b2 / (k(2) * s.pm(4)) *
                      ((P * P - k(1)) * oid * oid + (k(1) + D2) * g(p - one, Rational(2) * d) * g(p - one, d));
    return pol;
}

Ext rest_r2_y4_alternative(const ProfileParams& pp) {
    const Sym s(pp);
    const Rational p = s.p, d = s.d, one(1), d2 = d * d;
    const Ext& P = s.P;
    const Ext& D = s.D;
    const Ext& b = s.b;
    const Ext b2 = b * b;
    auto k = [](long v) { return q(v); };
    return k(5) * (P + k(1)) * D * (k(1) + s.B * s.B) * b2 * b / s.pm(6) * g(d, -(Rational(2) * p - one)) +
           s.nu * (P + k(1)) * D * b2 / (k(4) * s.pm(4)) * g(one, -s.be) +
           s.a * b2 / (k(2) * s.pm(4)) *
               g(Rational(2) * p * p - Rational(2) * p - Rational(2) * p * d2 - Rational(2) * d2 * d2,
                 (Rational(2) * p * p + Rational(3) * p - Rational(5)) * d + (Rational(3) * p - Rational(3)) * d2 * d);
}

KappaGraded btilde2(const ProfileParams& pp) {
    const Rational p = pp.p, d = pp.delta, be = pp.beta;
    Rational v = Rational(4) * (p - d * d) - d * be * (Rational(6) + Rational(4) * p + Rational(2) * d * d);
    return KappaGraded(Ext(v), -1);
}

KappaGraded b2_over_r21sq(const ProfileParams& pp) {
    return KappaGraded(Ext((Rational(32) - Rational(64) * pp.delta * pp.beta) / Rational(8)), -1);
}

OdeExpressions ode_expressions(const ProfileParams& pp, const CoeffTables& T, const BConstants& bq, const KappaGraded& X2,
                               const KappaGraded& Xt0) {
    auto G = [&](const char* n, int i, int j) { return T.graded(n, i, j); };
    auto K = [](const Ext& v) { return KappaGraded(v); };
    const Rational one(1), pm = pp.p - one, d = pp.delta, be = pp.beta;
    const KappaGraded kinv = kappa_pow(-1);
    const KappaGraded half = K(Ext(Rational(1, 2)));
    const KappaGraded nu = K(pp.nu), nu2 = nu * half, D = K(Ext(d)), mu = K(pp.mu);
    const KappaGraded od2 = K(Ext(one + d * d));
    const KappaGraded c2 = K(Ext(T.c[2])), c4 = K(Ext(T.c[4]));
    const KappaGraded db = K(pp.b * Ext(d / pm.pow(2)));  // delta b/(p-1)^2
    const KappaGraded tail = K(pp.b * pp.b * Ext((pp.p + one) * d * (Rational(12) - Rational(6) * d * be + Rational(6) * be * be) /
                                                  (Rational(2) * pm.pow(4))));
    const KappaGraded R21 = G("R", 2, 1), R01 = G("R", 0, 1), Rt01 = G("Rt", 0, 1);

    OdeExpressions o;
    o.coef_1_over_s = G("Rt", 2, 1);
    o.coef_q2_over_sqrt_s = nu2 * D + G("Dt", 2, 2) - c2 * db;
    o.coef_q2sq = c2 * D * kinv + bq.Bt2;
    o.coef_s32 = nu2 * R21 + G("Ct", 2, 2) * R21 - G("Dt", 2, 0) * Rt01 - db * R01 + G("Rt", 2, 2);

    const KappaGraded br2 = G("D", 2, 2) - nu2 * od2 + c4 * G("Dt", 4, 2) + G("Th", 2, 0) * c2 * kinv;
    o.Htilde1 = nu2 * (c4 * G("Dt", 4, 2) - od2 * nu2 + G("D", 2, 2) + G("Th", 2, 0) * c2 * kinv) -
                nu2 * (G("Kt", 2, 4) * G("D", 4, 2) * half + G("Lt", 2, 4) * G("Dt", 4, 2)) + mu * D + c2 * R21 * kinv +
                D * R01 * kinv + G("Dt", 2, 0) * (nu * G("Lt", 0, 2) * half - G("Dt", 0, 2) - G("Tht", 0, 0) * c2 * kinv) +
                G("Ct", 2, 2) * br2 + G("Ct", 2, 4) * G("D", 4, 2) * half + G("Dt", 2, 4) * G("Dt", 4, 2) + G("Ft", 2, 2) + bq.B1 -
                db * (G("D", 0, 2) - nu2 * G("L", 0, 2) + G("Th", 0, 0) * c2 * kinv) + tail * c2;

    const KappaGraded b4t = G("Ct", 4, 2) * R21 + G("Rt", 4, 2);
    const KappaGraded b4 = G("C", 4, 2) * R21 * half + G("R", 4, 2) * half;
    const KappaGraded x2 = X2 + c4 * b4t - G("D", 2, 0) * Rt01;
    o.Htilde2 = nu2 * x2 - nu2 * (G("Kt", 2, 4) * b4) - nu2 * (G("Lt", 2, 4) * b4t) + mu * R21 + R01 * R21 * kinv +
                G("Dt", 2, 0) * (-Xt0 + nu * G("Kt", 0, 2) * R21 * half - G("Ct", 0, 2) * R21) + G("Ct", 2, 2) * x2 +
                G("Ct", 2, 4) * b4 + G("Dt", 2, 4) * b4t + G("Et", 2, 2) * R21 - G("Ft", 2, 0) * Rt01 + bq.B2 -
                db * (nu2 * od2 * Rt01 - nu2 * G("K", 0, 2) * R21 - G("D", 0, 0) * Rt01 + G("C", 0, 2) * R21 + G("R", 0, 2) +
                      G("Th", 0, 0) * R01 * kinv) +
                G("Rt", 2, 3) + tail * R01;
    return o;
}

CoeffTables with_printed_entries(const ProfileParams& P, const CoeffTables& T) {
    CoeffTables r = T;
    for (const auto& [key, v] : projection_constants(P)) r.set(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
    return r;
}

}  // namespace cgl::printed
