#pragma once
// Formal matched-asymptotics derivation of b and mu.
//
// In the outer variable r the profile is written R e^{i phi} with R = R0 + R1/s + ...,
// phi = phi0 + phi1/s + ....  Every quantity is a finite sum of terms
//     c * r^m * g^(n - j/(p-1)),   g = p - 1 + b r^2,
// and the coefficients are polynomials of degree <= 2 in the free constant C of the
// phi1 ansatz.  The log coefficient P of the third-order problem must vanish; that
// fixes b.  The F4(0) = 0 condition gives mu as an affine function of C.
#include "cgl/exactnum.hpp"

#include <array>
#include <map>

namespace cgl {

// a + c C + c2 C^2
class Aff {
public:
    Aff() = default;
    Aff(Ext a, Ext c = {}, Ext c2 = {}) : v_{std::move(a), std::move(c), std::move(c2)} {}
    static Aff C() { return Aff({}, Ext(1)); }

    const Ext& operator[](int i) const { return v_[i]; }
    bool is_zero() const { return v_[0].is_zero() && v_[1].is_zero() && v_[2].is_zero(); }
    Ext at(const Ext& C) const { return v_[0] + C * (v_[1] + C * v_[2]); }

    Aff& operator+=(const Aff& o);
    Aff& operator-=(const Aff& o);
    // throws std::logic_error if a C^3 or C^4 term survives
    Aff& operator*=(const Aff& o);
    Aff& operator*=(const Ext& s);
    friend Aff operator+(Aff a, const Aff& b) { return a += b; }
    friend Aff operator-(Aff a, const Aff& b) { return a -= b; }
    friend Aff operator*(Aff a, const Aff& b) { return a *= b; }
    friend Aff operator*(Aff a, const Ext& s) { return a *= s; }
    friend bool operator==(const Aff& a, const Aff& b) { return a.v_ == b.v_; }

private:
    std::array<Ext, 3> v_;
};

std::string to_text(const Aff& a);

struct FormalResult {
    Rational p, delta, beta;
    bool r1_equation = false;    // the R1 profile solves its equation
    bool phi1_equation = false;  // the phi1 profile solves its equation
    Aff P;                       // half the 1/r residue of 2 H F3 / r
    Aff P_from_Q;                // assembled from the regenerated Q_{a,b}
    Aff P_from_printed_Q;        // assembled from the printed Q_{a,b}
    std::map<std::pair<int, int>, Aff> Q, Q_printed;
};

// One pass at an explicit modulus b^2 (the critical one if omitted).
FormalResult formal_run(const Rational& p, const Rational& delta);
FormalResult formal_run(const Rational& p, const Rational& delta, const Rational& b2);

// P/b = alpha + gamma b^2 at three generic moduli; root -alpha/gamma.
struct FormalB2 {
    Rational alpha, gamma, root;
    bool affine = false;  // the third modulus lies on the line
    bool c_free = false;  // P has no C or C^2 part at any modulus
};
FormalB2 formal_b2(const Rational& p, const Rational& delta);

struct FormalMu {
    Aff regenerated;  // F4 at r = 0
    Aff printed;      // the printed closed form
    // printed intermediate pieces against the regenerated ones (C-free parts)
    Ext first_three, first_three_printed;
    Ext r2_term, r2_term_printed;
    Ext tail, tail_printed;
};
FormalMu formal_mu(const Rational& p, const Rational& delta);

}  // namespace cgl
