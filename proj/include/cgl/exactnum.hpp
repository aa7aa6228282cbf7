#pragma once
//
// Exact scalar tower used by every identity check:
//
//   Rational  ->  Gauss (a + b i)  ->  Ext (c0 + c1 b, b^2 fixed)  ->  KappaGraded (v * kappa^g)
//
// plus a dense univariate polynomial over any of these (or std::complex<double>).
//
// b is a square root of a rational that is generally not a square, so a
// degree-two extension is enough.  kappa = (p-1)^{-1/(p-1)} is never adjoined;
// we only carry its exponent, and refuse to add values of different exponent.
//
#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgl {

struct DivideByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct MixedKappaGrade : std::logic_error {
    using std::logic_error::logic_error;
};
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using cplx = std::complex<double>;

// ---------------------------------------------------------------- Rational

class Rational {
public:
    Rational() = default;
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rational parse(std::string_view s);

    const mpq_class& mpq() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string str() const;  // "a/b", or "a" when b = 1

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inv() const { return Rational(1) / *this; }
    Rational pow(int k) const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

private:
    mpq_class v_;
};

// ------------------------------------------------------------------- Gauss

struct Gauss {
    Rational re, im;

    Gauss() = default;
    Gauss(int r) : re(r) {}
    Gauss(long r) : re(r) {}
    Gauss(Rational r) : re(std::move(r)) {}
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Gauss i() { return Gauss(0, 1); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Gauss conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    Gauss inv() const;
    cplx to_complex() const { return {re.to_double(), im.to_double()}; }

    Gauss operator-() const { return {-re, -im}; }
    Gauss& operator+=(const Gauss& o) { re += o.re; im += o.im; return *this; }
    Gauss& operator-=(const Gauss& o) { re -= o.re; im -= o.im; return *this; }
    Gauss& operator*=(const Gauss& o);
    Gauss& operator/=(const Gauss& o) { return *this *= o.inv(); }
    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
};

// --------------------------------------------------------------------- Ext

// c0 + c1*b with b^2 = modulus.  The modulus is interned so that values can be
// compared and combined by pointer; a value whose c1 is zero carries no
// modulus and combines with anything.
class Ext {
public:
    Ext() = default;
    Ext(int r) : c0_(r) {}
    Ext(Rational r) : c0_(std::move(r)) {}
    Ext(Gauss c0) : c0_(std::move(c0)) {}
    Ext(Gauss c0, Gauss c1, const Rational& modulus);

    static Ext b(const Rational& modulus) { return Ext(Gauss(), Gauss(1), modulus); }

    const Gauss& c0() const { return c0_; }
    const Gauss& c1() const { return c1_; }
    bool has_modulus() const { return mod_ != nullptr; }
    Rational modulus() const { return mod_ ? *mod_ : Rational(); }

    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
    bool is_real() const { return c0_.im.is_zero() && c1_.im.is_zero(); }
    Ext conj() const { return Ext(c0_.conj(), c1_.conj(), mod_); }
    Ext re() const { return Ext(Gauss(c0_.re), Gauss(c1_.re), mod_); }
    Ext im() const { return Ext(Gauss(c0_.im), Gauss(c1_.im), mod_); }
    Ext inv() const;
    cplx to_complex() const;

    Ext operator-() const { return Ext(-c0_, -c1_, mod_); }
    Ext& operator+=(const Ext& o);
    Ext& operator-=(const Ext& o);
    Ext& operator*=(const Ext& o);
    Ext& operator/=(const Ext& o) { return *this *= o.inv(); }
    friend Ext operator+(Ext a, const Ext& b) { return a += b; }
    friend Ext operator-(Ext a, const Ext& b) { return a -= b; }
    friend Ext operator*(Ext a, const Ext& b) { return a *= b; }
    friend Ext operator/(Ext a, const Ext& b) { return a /= b; }
    friend bool operator==(const Ext& a, const Ext& b);

private:
    Ext(Gauss c0, Gauss c1, const Rational* mod) : c0_(std::move(c0)), c1_(std::move(c1)), mod_(mod) { normalize(); }
    void normalize() { if (c1_.is_zero()) mod_ = nullptr; }
    const Rational* merge(const Ext& o) const;

    Gauss c0_, c1_;
    const Rational* mod_ = nullptr;
};

// ------------------------------------------------------------- KappaGraded

class KappaGraded {
public:
    KappaGraded() = default;
    KappaGraded(Ext v, int grade = 0) : v_(std::move(v)), g_(grade) {}

    const Ext& value() const { return v_; }
    int grade() const { return g_; }
    bool is_zero() const { return v_.is_zero(); }
    cplx to_complex(double kappa) const;

    KappaGraded operator-() const { return {-v_, g_}; }
    KappaGraded& operator+=(const KappaGraded& o);
    KappaGraded& operator-=(const KappaGraded& o) { return *this += -o; }
    KappaGraded& operator*=(const KappaGraded& o) { v_ *= o.v_; g_ += o.g_; return *this; }
    KappaGraded& operator/=(const KappaGraded& o) { v_ /= o.v_; g_ -= o.g_; return *this; }
    friend KappaGraded operator+(KappaGraded a, const KappaGraded& b) { return a += b; }
    friend KappaGraded operator-(KappaGraded a, const KappaGraded& b) { return a -= b; }
    friend KappaGraded operator*(KappaGraded a, const KappaGraded& b) { return a *= b; }
    friend KappaGraded operator/(KappaGraded a, const KappaGraded& b) { return a /= b; }
    // Equality ignores the grade of a zero value.
    friend bool operator==(const KappaGraded& a, const KappaGraded& b);

private:
    Ext v_;
    int g_ = 0;
};

inline KappaGraded kappa_pow(int g) { return KappaGraded(Ext(1), g); }

// ---------------------------------------------------------- scalar helpers

inline bool is_zero(const Gauss& x) { return x.is_zero(); }
inline bool is_zero(const Ext& x) { return x.is_zero(); }
inline bool is_zero(const cplx& x) { return x == cplx(0.0, 0.0); }
inline Gauss conj_of(const Gauss& x) { return x.conj(); }
inline Ext conj_of(const Ext& x) { return x.conj(); }
inline cplx conj_of(const cplx& x) { return std::conj(x); }
inline Gauss real_of(const Gauss& x) { return Gauss(x.re); }
inline Ext real_of(const Ext& x) { return x.re(); }
inline cplx real_of(const cplx& x) { return {x.real(), 0.0}; }
inline Gauss imag_of(const Gauss& x) { return Gauss(x.im); }
inline Ext imag_of(const Ext& x) { return x.im(); }
inline cplx imag_of(const cplx& x) { return {x.imag(), 0.0}; }

template <class T> T scalar_from(const Gauss& g);
template <> inline Gauss scalar_from<Gauss>(const Gauss& g) { return g; }
template <> inline Ext scalar_from<Ext>(const Gauss& g) { return Ext(g); }
template <> inline cplx scalar_from<cplx>(const Gauss& g) { return g.to_complex(); }

// --------------------------------------------------------------------- Poly

template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    static Poly monomial(int k, T v) {
        std::vector<T> c(k + 1);
        c[k] = std::move(v);
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T{}; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (cgl::is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (cgl::is_zero(b.c_[j])) continue;
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const T& s) {
        for (auto& x : a.c_) x *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(const T& s, Poly a) { return std::move(a) * s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> r(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * T(static_cast<int>(k));
        return Poly(std::move(r));
    }
    // multiply by y
    Poly shifted() const {
        if (is_zero()) return {};
        std::vector<T> r(c_.size() + 1);
        for (size_t k = 0; k < c_.size(); ++k) r[k + 1] = c_[k];
        return Poly(std::move(r));
    }
    Poly conj() const {
        std::vector<T> r(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) r[k] = conj_of(c_[k]);
        return Poly(std::move(r));
    }
    // coefficientwise real part; y is real so this is Re P(y)
    Poly real_part() const {
        std::vector<T> r(c_.size());
        for (size_t k = 0; k < c_.size(); ++k) r[k] = real_of(c_[k]);
        return Poly(std::move(r));
    }
    Poly truncated(int maxdeg) const {
        if (degree() <= maxdeg) return *this;
        return Poly(std::vector<T>(c_.begin(), c_.begin() + (maxdeg + 1)));
    }
    template <class Y>
    auto eval(const Y& y) const {
        using R = decltype(T{} * y);
        R acc{};
        for (size_t k = c_.size(); k-- > 0;) acc = acc * y + c_[k];
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && cgl::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using PolyG = Poly<Gauss>;
using PolyE = Poly<Ext>;
using PolyC = Poly<cplx>;

PolyE to_ext(const PolyG& p);
PolyC to_float(const PolyG& p);
PolyC to_float(const PolyE& p);

// Generalised binomial coefficient C(gamma, k).
Gauss binomial(const Gauss& gamma, int k);

// sum_{k<=order} C(gamma,k) u^k, truncated at degree `order`; u(0) must vanish.
template <class T>
Poly<T> binomial_series(const Gauss& gamma, const Poly<T>& u, int order) {
    if (order < 0) throw std::invalid_argument("binomial_series: negative order");
    if (!is_zero(u.coeff(0))) throw std::invalid_argument("binomial_series: u has a nonzero constant term");
    Poly<T> acc = Poly<T>::constant(T(1));
    Poly<T> uk = acc;
    for (int k = 1; k <= order; ++k) {
        uk = (uk * u).truncated(order);
        if (uk.is_zero()) break;
        acc += uk * scalar_from<T>(binomial(gamma, k));
    }
    return acc;
}

// ------------------------------------------------------------- text format
//
//   scalar :=  a/b + (c/d)i [ + (e/f + (g/h)i) b ] [ k^n ]
//   poly   :=  one "(scalar) * y^k" term per line, or "0"

std::string to_text(const Rational& x);
std::string to_text(const Gauss& x);
std::string to_text(const Ext& x);
std::string to_text(const KappaGraded& x);
std::string to_text(const PolyG& p);
std::string to_text(const PolyE& p);

Gauss parse_gauss(std::string_view s);
Ext parse_ext(std::string_view s, const Rational& modulus);
KappaGraded parse_kappa(std::string_view s, const Rational& modulus);
PolyG parse_poly_gauss(std::string_view s);
PolyE parse_poly_ext(std::string_view s, const Rational& modulus);

}  // namespace cgl
