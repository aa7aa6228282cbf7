#include "cgl/params.hpp"

#include <cmath>

namespace cgl {

Rational critical_beta(const Rational& p, const Rational& delta) {
    if (delta.is_zero()) throw DomainError("delta must be nonzero on the critical curve");
    return (p - delta * delta) / ((p + Rational(1)) * delta);
}

std::optional<Rational> pcri_squared(const Rational& p) {
    if (p <= Rational(2)) return std::nullopt;
    return p * (Rational(2) * p - Rational(1)) / (p - Rational(2));
}

Rational b_critical(const Rational& p, const Rational& d) {
    if (p <= Rational(1)) throw DomainError("p must exceed 1");
    if (d.is_zero()) throw DomainError("delta must be nonzero");
    const Rational d2 = d * d;
    if (auto pc = pcri_squared(p); pc && d2 >= *pc) throw DomainError("delta outside (-p_cri, p_cri)");
    const Rational one(1), two(2), three(3);
    Rational pm = p - one;
    Rational num = pm.pow(4) * (p + one).pow(2) * d2;
    Rational den = Rational(16) * (one + d2) * (p * (two * p - one) - (p - two) * d2) * ((p + three) * d2 + p * (three * p + one));
    Rational b2 = num / den;
    if (b2.sign() <= 0) throw DomainError("delta outside (-p_cri, p_cri)");
    return b2;
}

ProfileParams with_modulus(const ProfileParams& P, const Rational& b2) {
    ProfileParams r = P;
    const Rational one(1);
    const Rational pm2 = (P.p - one).pow(2);
    r.b2 = b2;
    r.b = Ext::b(b2);
    r.nu = r.b * Ext(Rational(-4) * P.beta * (one + P.delta * P.delta) / pm2);
    r.a = KappaGraded(r.b * Ext(Rational(2) * (one - P.beta * P.delta) / pm2), 1);
    r.mu = Ext();
    r.has_mu = false;
    return r;
}

ProfileParams derive_params(const Rational& p, const Rational& delta) {
    ProfileParams P;
    P.p = p;
    P.delta = delta;
    P.b2 = b_critical(p, delta);
    P.beta = critical_beta(p, delta);
    P.pcri2 = pcri_squared(p);
    return with_modulus(P, P.b2);
}

FloatParams FloatParams::from(const ProfileParams& P) {
    FloatParams f;
    f.p = P.p.to_double();
    f.delta = P.delta.to_double();
    f.beta = P.beta.to_double();
    f.kappa = std::pow(f.p - 1, -1 / (f.p - 1));
    f.b = std::sqrt(P.b2.to_double());
    f.nu = P.nu.to_complex().real();
    f.a = P.a.to_complex(f.kappa).real();
    f.mu = P.has_mu ? P.mu.to_complex().real() : 0.0;
    return f;
}

}  // namespace cgl
