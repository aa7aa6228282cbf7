#include "cgl/formal.hpp"

#include "cgl/params.hpp"

namespace cgl {

Aff& Aff::operator+=(const Aff& o) {
    for (int i = 0; i < 3; ++i) v_[i] += o.v_[i];
    return *this;
}

Aff& Aff::operator-=(const Aff& o) {
    for (int i = 0; i < 3; ++i) v_[i] -= o.v_[i];
    return *this;
}

Aff& Aff::operator*=(const Aff& o) {
    std::array<Ext, 5> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i + j] += v_[i] * o.v_[j];
    if (!r[3].is_zero() || !r[4].is_zero()) throw std::logic_error("Aff: product leaves a C^3 term");
    v_ = {r[0], r[1], r[2]};
    return *this;
}

Aff& Aff::operator*=(const Ext& s) {
    for (auto& x : v_) x *= s;
    return *this;
}

std::string to_text(const Aff& a) {
    return to_text(a[0]) + " ; C: " + to_text(a[1]) + " ; C^2: " + to_text(a[2]);
}

namespace {

// key (m, n, j): r^m g^(n - j/(p-1))
using Key = std::array<int, 3>;
using Terms = std::map<Key, Aff>;

Terms single(int m, int n, int j, const Aff& v) { return Terms{{Key{m, n, j}, v}}; }

void accumulate(Terms& into, const Key& k, const Aff& v) {
    auto [it, fresh] = into.try_emplace(k, v);
    if (!fresh) it->second += v;
    if (it->second.is_zero()) into.erase(it);
}

Terms operator+(Terms a, const Terms& b) {
    for (const auto& [k, v] : b) accumulate(a, k, v);
    return a;
}

Terms operator*(const Terms& f, const Aff& c) {
    Terms r;
    for (const auto& [k, v] : f) accumulate(r, k, v * c);
    return r;
}

Terms operator*(const Terms& f, const Ext& c) { return f * Aff(c); }

Terms operator*(const Terms& f, const Terms& h) {
    Terms r;
    for (const auto& [k1, v1] : f)
        for (const auto& [k2, v2] : h) accumulate(r, {k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, v1 * v2);
    return r;
}

class Algebra {
public:
    Algebra(const Rational& p, const Ext& b) : p_(p), pm_(p - Rational(1)), b_(b) {}

    Terms d(const Terms& f) const {
        Terms r;
        for (const auto& [k, v] : f) {
            const auto [m, n, j] = k;
            if (m) accumulate(r, {m - 1, n, j}, v * Ext(m));
            const Rational e = Rational(n) - Rational(j) / pm_;
            if (!e.is_zero()) accumulate(r, {m + 1, n - 1, j}, v * (Ext(e * Rational(2)) * b_));
        }
        return r;
    }

    // All terms with the same j brought to the lowest power of g and expanded in r.
    bool vanishes(const Terms& f) const {
        std::map<int, int> nmin;
        for (const auto& [k, v] : f) {
            auto it = nmin.find(k[2]);
            if (it == nmin.end() || k[1] < it->second) nmin[k[2]] = k[1];
        }
        std::map<std::pair<int, int>, Aff> poly;
        for (const auto& [k, v] : f) {
            const int e = k[1] - nmin[k[2]];
            Ext bi(1);
            for (int i = 0; i <= e; ++i) {
                Rational c = Rational(mpq_class(binomial_int(e, i))) * pm_.pow(e - i);
                poly[{k[2], k[0] + 2 * i}] += v * (Ext(c) * bi);
                bi *= b_;
            }
        }
        for (const auto& [k, v] : poly)
            if (!v.is_zero()) return false;
        return true;
    }

    // coefficient of r^target near r = 0; every term must have j = 0
    Aff coefficient(const Terms& f, int target) const {
        Aff tot;
        for (const auto& [k, v] : f) {
            const auto [m, n, j] = k;
            if (j != 0) throw std::logic_error("formal: coefficient of a term with a fractional power of g");
            const int t = target - m;
            if (t < 0 || t % 2) continue;
            const int i = t / 2;
            // g^n = (p-1)^n (1 + b r^2/(p-1))^n
            Ext c = Ext(binomial(Gauss(n), i).re * pm_.pow(n));
            for (int q = 0; q < i; ++q) c *= b_ * Ext(pm_.inv());
            tot += v * c;
        }
        return tot;
    }

private:
    static mpz_class binomial_int(int n, int k) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    }
    Rational p_, pm_;
    Ext b_;
};

// The building blocks of the third- and fourth-order problems.
struct Pieces {
    Terms R0, R1, R0p, R0pp, R1p, R1pp, ph0p, ph0pp, ph1p, ph1pp, R0inv, R0pm2, Rpow, r1, F3;
    bool r1_equation = false, phi1_equation = false;
};

Pieces build(const Rational& p, const Rational& d, const Rational& be, const Ext& b, const Algebra& A) {
    const Rational one(1), pm = p - one;
    Pieces s;
    const Aff C = Aff::C();
    s.R0 = single(0, 0, 1, Aff(Ext(1)));
    s.R1 = single(0, -1, 1, Aff(b * Ext(Rational(-2) * (d * be - one) / pm))) + single(2, -1, 1, C);
    const Rational X = (p + Rational(3)) * d + be * (Rational(2) * p + d * d * (p - Rational(3)));
    s.ph0p = single(1, -1, 0, Aff(b * Ext(Rational(-2) * d / pm)));
    // (2b/(p-1)^2)(X + C delta (p-1)^3/(2 b^2)) = 2bX/(p-1)^2 + C delta (p-1)/b
    const Aff K(b * Ext(Rational(2) * X / pm.pow(2)), Ext(d * pm) / b);
    s.ph1p = single(1, -1, 0, Aff(b * b * Ext(Rational(4) * be * (one + d * d) / pm.pow(2)))) +
             single(1, -2, 0, K * (Ext(2) * b));
    s.R0p = A.d(s.R0);
    s.R0pp = A.d(s.R0p);
    s.R1p = A.d(s.R1);
    s.R1pp = A.d(s.R1p);
    s.ph0pp = A.d(s.ph0p);
    s.ph1pp = A.d(s.ph1p);
    s.Rpow = single(0, -1, 0, Aff(Ext(1)));    // |R0|^{p-1}
    s.R0pm2 = single(0, -1, -1, Aff(Ext(1)));  // R0^{p-2}
    s.R0inv = single(0, 0, -1, Aff(Ext(1)));
    s.r1 = single(1, 0, 0, Aff(Ext(1)));

    auto k = [](const Rational& v) { return Ext(v); };
    const Terms eqR1 = s.R1p * s.r1 * k(Rational(-1, 2)) + s.R1 * k(-one / pm) + s.Rpow * s.R1 * k(p) + s.R0pp +
                       s.R0 * s.ph0p * s.ph0p * k(-one) + (s.R0p * s.ph0p * k(2) + s.R0 * s.ph0pp) * k(-be);
    const Ext nu = b * Ext(Rational(-4) * be * (one + d * d) / pm.pow(2));
    const Terms eqph1 = s.ph1p * s.r1 * k(Rational(-1, 2)) + s.ph0pp + s.ph0p * s.ph0p * k(-be) +
                        s.R0inv * (s.R0p * s.ph0p * k(2) + s.R0pp * k(be)) + s.R0pm2 * s.R1 * k(d * pm) +
                        single(0, 0, 0, Aff(-nu * Ext(Rational(1, 2))));
    s.r1_equation = A.vanishes(eqR1);
    s.phi1_equation = A.vanishes(eqph1);

    s.F3 = s.R1pp + s.R0 * s.ph0p * s.ph1p * k(-2) + s.R1 * s.ph0p * s.ph0p * k(-one) + s.R0p * s.ph1p * k(Rational(-2) * be) +
           s.R1p * s.ph0p * k(Rational(-2) * be) + s.R0 * s.ph1pp * k(-be) + s.R1 * s.ph0pp * k(-be) +
           s.R0p * s.r1 * k(Rational(1, 4)) + s.R0pm2 * s.R1 * s.R1 * k(p * pm / Rational(2));
    return s;
}

Aff assemble(const std::map<std::pair<int, int>, Aff>& Q, const Rational& p, const Ext& b) {
    const Rational pm = p - Rational(1);
    auto get = [&](int a, int c) {
        auto it = Q.find({a, c});
        return it == Q.end() ? Aff() : it->second;
    };
    return get(1, 2) + get(2, 1) * (-b * Ext(pm.pow(-2))) + get(2, 2) * Ext(pm.inv()) +
           get(3, 1) * (-b * Ext(Rational(2) / pm.pow(3))) + get(3, 2) * Ext(pm.pow(-2));
}

std::map<std::pair<int, int>, Aff> printed_Q(const Rational& p, const Rational& d, const Rational& be, const Ext& b) {
    const Rational pm = p - Rational(1), one(1), d2 = d * d, be2 = be * be;
    const Aff C = Aff::C();
    const Ext bb = b * b, bbb = bb * b;
    std::map<std::pair<int, int>, Aff> Q;
    Q[{1, 2}] = Aff(-b * Ext(one / (Rational(2) * pm)));
    Q[{2, 1}] = Aff(bb * Ext(Rational(4) / pm.pow(2) *
                             ((Rational(2) - p) * d2 * be2 - Rational(2) * d * be - p - Rational(2) * p * be2))) +
                C * Ext(Rational(-2) * pm * d * be);
    Q[{2, 2}] = Aff(bbb * Ext((Rational(16) * d2 * d * be + Rational(8) * (p + one) * d2 * be2 + Rational(8) * (p + one) * be2 +
                               Rational(16) * d * be) /
                              pm.pow(3))) +
                C * (b * Ext(Rational(10) * d * be / pm - Rational(10) * p / pm));
    Q[{3, 1}] = Aff(bb * Ext(Rational(2) * p * (d * be - one).pow(2) / pm));
    Q[{3, 2}] = Aff(bbb * Ext((d2 * d * be * (Rational(16) * p - Rational(40)) +
                               d2 * be2 * (Rational(16) * p * p - Rational(24) * p - Rational(8)) + d2 * (Rational(16) * p + Rational(40)) +
                               Rational(32) * p * p * be2 + d * be * (Rational(64) * p + Rational(8)) +
                               Rational(8) * p * (Rational(2) * p - one)) /
                              pm.pow(3))) +
                C * (b * Ext(Rational(8) * d2 + Rational(6) * p * d * be + Rational(2) * p));
    return Q;
}

}  // namespace

FormalResult formal_run(const Rational& p, const Rational& d) { return formal_run(p, d, b_critical(p, d)); }

FormalResult formal_run(const Rational& p, const Rational& d, const Rational& b2) {
    const Rational be = critical_beta(p, d);
    const Ext b = Ext::b(b2);
    const Algebra A(p, b);
    const Pieces s = build(p, d, be, b, A);

    FormalResult out;
    out.p = p;
    out.delta = d;
    out.beta = be;
    out.r1_equation = s.r1_equation;
    out.phi1_equation = s.phi1_equation;
    // 2H/r = 2 r^{-3} g^{1 + 1/(p-1)}
    const Terms G = single(-3, 1, -1, Aff(Ext(2))) * s.F3;
    out.P = A.coefficient(G, -1) * Ext(Rational(1, 2));
    for (const auto& [k, v] : s.F3) {
        if (k[2] != 1) throw std::logic_error("formal: F3 term with unexpected power of R0");
        out.Q[{-k[1], k[0] / 2 + 1}] = v;
    }
    out.Q_printed = printed_Q(p, d, be, b);
    out.P_from_Q = assemble(out.Q, p, b);
    out.P_from_printed_Q = assemble(out.Q_printed, p, b);
    return out;
}

FormalB2 formal_b2(const Rational& p, const Rational& d) {
    const Rational t[3] = {Rational(1), Rational(2), Rational(5)};
    Rational k[3];
    FormalB2 r;
    r.c_free = true;
    for (int i = 0; i < 3; ++i) {
        const Aff P = formal_run(p, d, t[i]).P;
        if (!P[1].is_zero() || !P[2].is_zero()) r.c_free = false;
        // P = b (alpha + gamma b^2)
        if (!P[0].c0().is_zero() || !P[0].c1().im.is_zero())
            throw std::logic_error("formal_b2: P is not a real multiple of b");
        k[i] = P[0].c1().re;
    }
    r.gamma = (k[1] - k[0]) / (t[1] - t[0]);
    r.alpha = k[0] - r.gamma * t[0];
    r.affine = (r.alpha + r.gamma * t[2] - k[2]).is_zero();
    if (r.gamma.is_zero()) throw DomainError("formal_b2: P does not depend on b^2");
    r.root = -r.alpha / r.gamma;
    return r;
}

FormalMu formal_mu(const Rational& p, const Rational& d) {
    const Rational be = critical_beta(p, d), one(1), pm = p - one;
    const Ext b = Ext::b(b_critical(p, d));
    const Algebra A(p, b);
    const Pieces s = build(p, d, be, b, A);
    auto k = [](const Rational& v) { return Ext(v); };

    const Terms R0m2 = single(0, 0, -2, Aff(Ext(1)));
    const Terms R0pm3 = single(0, -1, -2, Aff(Ext(1)));
    const Terms r2_term = s.R0pm2 * s.F3 * k(-d * pm);  // delta (p-1) R0^{p-2} R2 at r = 0
    const Terms tail = R0pm3 * s.R1 * s.R1 * k(d * pm * (p - Rational(2)) / Rational(2));
    const Terms first3 = s.ph1pp + s.R0inv * s.R1pp * k(be) + s.R0pp * R0m2 * s.R1 * k(-be);
    const Terms F4 = s.ph1pp + s.ph0p * s.ph1p * k(Rational(-2) * be) +
                     (s.R0inv * s.R0p * s.ph1p + s.R0inv * s.R1p * s.ph0p + s.R0p * s.ph0p * R0m2 * s.R1 * k(-one)) * k(2) +
                     (s.R0inv * s.R1pp + s.R0pp * R0m2 * s.R1 * k(-one)) * k(be) + s.ph0p * s.r1 * k(Rational(-1, 4)) + r2_term +
                     tail;

    FormalMu m;
    m.regenerated = A.coefficient(F4, 0);
    const Rational d2 = d * d, be2 = be * be;
    const Ext q = b * b * Ext(pm.pow(-4));
    m.printed = Aff(q * Ext(Rational(8) * (p + one) * d + Rational(8) * p * be + (Rational(4) * p + Rational(8)) * d2 * be +
                            (Rational(16) * p - Rational(8)) * d * be2 + (Rational(8) * p - Rational(16)) * d2 * d * be2),
                    Ext(Rational(2) * be * (one + d2) / pm));
    m.first_three = A.coefficient(first3, 0)[0];
    m.r2_term = A.coefficient(r2_term, 0)[0];
    m.tail = A.coefficient(tail, 0)[0];
    m.first_three_printed =
        q * Ext(Rational(4) * (p + Rational(3)) * d + Rational(4) * (Rational(3) * p - one) * be +
                Rational(4) * (Rational(2) * p - Rational(4)) * d2 * be + Rational(4) * p * be2 * d - Rational(4) * p * be -
                Rational(4) * be2 * d + Rational(4) * be);
    m.r2_term_printed = q * Ext(Rational(4) * (p + Rational(3)) * d2 * be +
                                d * be2 * (Rational(12) * p - Rational(4) + d2 * (Rational(8) * p - Rational(16))) -
                                (d * be - one) * (Rational(2) * p * d + (Rational(2) * p - Rational(4)) * d2 * be));
    m.tail_printed = q * Ext(Rational(2) * (p - Rational(2)) * d * (d * be - one).pow(2));
    return m;
}

}  // namespace cgl
