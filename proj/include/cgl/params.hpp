#pragma once
#include "cgl/exactnum.hpp"

#include <optional>

namespace cgl {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// beta on the critical curve p - delta^2 - beta delta (p+1) = 0
Rational critical_beta(const Rational& p, const Rational& delta);

// p_cri^2 = p(2p-1)/(p-2) for p > 2; no upper limit otherwise
std::optional<Rational> pcri_squared(const Rational& p);

// b^2 of the critical profile; throws DomainError outside the window
Rational b_critical(const Rational& p, const Rational& delta);

struct ProfileParams {
    Rational p, delta, beta;
    Rational b2;                   // b^2, the modulus of the extension
    std::optional<Rational> pcri2;
    Ext b;                         // b itself, adjoined
    Ext nu;                        // -4 b beta (1+delta^2)/(p-1)^2
    KappaGraded a;                 // 2 kappa (1 - beta delta) b/(p-1)^2, grade 1
    Ext mu;                        // mu_cri once computed (real)
    bool has_mu = false;

    Gauss one_i_delta() const { return Gauss(Rational(1), delta); }
    Gauss one_i_beta() const { return Gauss(Rational(1), beta); }
    // a/kappa
    const Ext& a_hat() const { return a.value(); }
};

ProfileParams derive_params(const Rational& p, const Rational& delta);

// Same (p, delta, beta) with b^2 replaced by an arbitrary positive rational.  Used
// to read off the dependence of a coefficient on b^2.
ProfileParams with_modulus(const ProfileParams& P, const Rational& b2);

struct FloatParams {
    double p = 0, delta = 0, beta = 0, kappa = 0, b = 0, nu = 0, a = 0, mu = 0;
    static FloatParams from(const ProfileParams& P);
};

}  // namespace cgl
