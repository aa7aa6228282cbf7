#include "cgl/exactnum.hpp"

#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

namespace cgl {

// ---------------------------------------------------------------- Rational

Rational::Rational(long n, long d) {
    if (d == 0) throw DivideByZero("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    std::string t(s);
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty rational");
    t = t.substr(a, b - a + 1);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    // allow a decimal literal such as 0.25 as a convenience for config files
    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos ||
            ip.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad rational literal '" + std::string(s) + "'");
        mpz_class num(ip + fp), den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        mpq_class q(neg ? mpz_class(-num) : num, den);
        return Rational(q);
    }
    mpq_class q;
    if (t.find_first_not_of("-0123456789/") != std::string::npos || q.set_str(t, 10) != 0)
        throw ParseError("bad rational literal '" + std::string(s) + "'");
    if (q.get_den() == 0) throw DivideByZero("rational with zero denominator");
    return Rational(q);
}

std::string Rational::str() const { return v_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivideByZero("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    Rational r(1), base = *this;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

// ------------------------------------------------------------------- Gauss

Gauss& Gauss::operator*=(const Gauss& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Gauss Gauss::inv() const {
    Rational n = norm2();
    if (n.is_zero()) throw DivideByZero("division by zero gaussian rational");
    return {re / n, -im / n};
}

// --------------------------------------------------------------------- Ext

namespace {
const Rational* intern_modulus(const Rational& m) {
    static std::mutex mu;
    static std::set<Rational> pool;
    std::lock_guard lock(mu);
    return &*pool.insert(m).first;
}
}  // namespace

Ext::Ext(Gauss c0, Gauss c1, const Rational& modulus)
    : c0_(std::move(c0)), c1_(std::move(c1)), mod_(intern_modulus(modulus)) {
    normalize();
}

const Rational* Ext::merge(const Ext& o) const {
    if (!mod_) return o.mod_;
    if (!o.mod_ || o.mod_ == mod_) return mod_;
    throw std::logic_error("Ext: operands use different b^2 (" + mod_->str() + " vs " + o.mod_->str() + ")");
}

Ext& Ext::operator+=(const Ext& o) {
    const Rational* m = merge(o);
    c0_ += o.c0_;
    c1_ += o.c1_;
    mod_ = m;
    normalize();
    return *this;
}

Ext& Ext::operator-=(const Ext& o) {
    const Rational* m = merge(o);
    c0_ -= o.c0_;
    c1_ -= o.c1_;
    mod_ = m;
    normalize();
    return *this;
}

Ext& Ext::operator*=(const Ext& o) {
    const Rational* m = merge(o);
    Gauss n0 = c0_ * o.c0_;
    if (m && !c1_.is_zero() && !o.c1_.is_zero()) n0 += c1_ * o.c1_ * Gauss(*m);
    Gauss n1 = c0_ * o.c1_ + c1_ * o.c0_;
    c0_ = std::move(n0);
    c1_ = std::move(n1);
    mod_ = m;
    normalize();
    return *this;
}

Ext Ext::inv() const {
    if (!mod_) return Ext(c0_.inv());
    // (c0 - c1 b) / (c0^2 - c1^2 b^2)
    Gauss n = c0_ * c0_ - c1_ * c1_ * Gauss(*mod_);
    if (n.is_zero()) throw DivideByZero("Ext: zero divisor (norm vanishes)");
    Gauss ni = n.inv();
    return Ext(c0_ * ni, -c1_ * ni, mod_);
}

cplx Ext::to_complex() const {
    cplx r = c0_.to_complex();
    if (mod_) r += c1_.to_complex() * std::sqrt(mod_->to_double());
    return r;
}

bool operator==(const Ext& a, const Ext& b) {
    if (a.c1_.is_zero() && b.c1_.is_zero()) return a.c0_ == b.c0_;
    return a.mod_ == b.mod_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
}

// ------------------------------------------------------------- KappaGraded

KappaGraded& KappaGraded::operator+=(const KappaGraded& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (g_ != o.g_)
        throw MixedKappaGrade("adding kappa^" + std::to_string(g_) + " and kappa^" + std::to_string(o.g_) + " terms");
    v_ += o.v_;
    return *this;
}

cplx KappaGraded::to_complex(double kappa) const { return v_.to_complex() * std::pow(kappa, g_); }

bool operator==(const KappaGraded& a, const KappaGraded& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.g_ == b.g_ && a.v_ == b.v_;
}

// -------------------------------------------------------------------- poly

PolyE to_ext(const PolyG& p) {
    std::vector<Ext> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return PolyE(std::move(c));
}

PolyC to_float(const PolyG& p) {
    std::vector<cplx> c;
    for (const auto& x : p.coeffs()) c.push_back(x.to_complex());
    return PolyC(std::move(c));
}

PolyC to_float(const PolyE& p) {
    std::vector<cplx> c;
    for (const auto& x : p.coeffs()) c.push_back(x.to_complex());
    return PolyC(std::move(c));
}

Gauss binomial(const Gauss& gamma, int k) {
    Gauss r(1);
    for (int i = 0; i < k; ++i) r = r * (gamma - Gauss(i)) / Gauss(i + 1);
    return r;
}

// ------------------------------------------------------------- text format

std::string to_text(const Rational& x) { return x.str(); }

std::string to_text(const Gauss& x) { return x.re.str() + " + (" + x.im.str() + ")i"; }

std::string to_text(const Ext& x) {
    std::string s = to_text(x.c0());
    if (!x.c1().is_zero()) s += " + (" + to_text(x.c1()) + ") b";
    return s;
}

std::string to_text(const KappaGraded& x) {
    std::string s = to_text(x.value());
    if (x.grade() != 0 && !x.is_zero()) s += " k^" + std::to_string(x.grade());
    return s;
}

namespace {

template <class T>
std::string poly_text(const Poly<T>& p) {
    if (p.is_zero()) return "0\n";
    std::ostringstream os;
    for (int k = 0; k <= p.degree(); ++k) {
        if (is_zero(p.coeff(k))) continue;
        os << "(" << to_text(p.coeff(k)) << ") * y^" << k << "\n";
    }
    return os.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Split "X + (Y)<tag>" at the last top-level " + (" whose closing paren is followed by tag.
bool split_tagged(std::string_view s, std::string_view tag, std::string_view& head, std::string_view& inner) {
    s = trim(s);
    if (s.size() < tag.size() + 2 || s.substr(s.size() - tag.size()) != tag) return false;
    std::string_view body = trim(s.substr(0, s.size() - tag.size()));
    if (body.empty() || body.back() != ')') return false;
    int depth = 0;
    for (size_t i = body.size(); i-- > 0;) {
        if (body[i] == ')') ++depth;
        else if (body[i] == '(') {
            if (--depth == 0) {
                std::string_view before = trim(body.substr(0, i));
                if (before.empty() || before.back() != '+') return false;
                head = trim(before.substr(0, before.size() - 1));
                inner = body.substr(i + 1, body.size() - i - 2);
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::string to_text(const PolyG& p) { return poly_text(p); }
std::string to_text(const PolyE& p) { return poly_text(p); }

Gauss parse_gauss(std::string_view s) {
    std::string_view head, inner;
    if (!split_tagged(s, "i", head, inner)) return Gauss(Rational::parse(s));
    return Gauss(Rational::parse(head), Rational::parse(inner));
}

Ext parse_ext(std::string_view s, const Rational& modulus) {
    std::string_view head, inner;
    if (!split_tagged(s, "b", head, inner)) return Ext(parse_gauss(s));
    return Ext(parse_gauss(head), parse_gauss(inner), modulus);
}

KappaGraded parse_kappa(std::string_view s, const Rational& modulus) {
    s = trim(s);
    auto pos = s.rfind(" k^");
    if (pos == std::string_view::npos) return KappaGraded(parse_ext(s, modulus), 0);
    std::string g(trim(s.substr(pos + 3)));
    int grade = 0;
    try {
        size_t used = 0;
        grade = std::stoi(g, &used);
        if (used != g.size()) throw ParseError("bad kappa exponent");
    } catch (const std::logic_error&) {
        throw ParseError("bad kappa exponent '" + g + "'");
    }
    return KappaGraded(parse_ext(s.substr(0, pos), modulus), grade);
}

namespace {

template <class T, class F>
Poly<T> parse_poly(std::string_view s, F scalar) {
    std::vector<T> c;
    std::istringstream in{std::string(s)};
    std::string line;
    while (std::getline(in, line)) {
        std::string_view l = trim(line);
        if (l.empty() || l == "0") continue;
        auto star = l.rfind(") * y^");
        if (l.front() != '(' || star == std::string_view::npos) throw ParseError("bad polynomial term '" + line + "'");
        int k = std::stoi(std::string(l.substr(star + 6)));
        if (k < 0) throw ParseError("negative degree");
        if (static_cast<int>(c.size()) <= k) c.resize(k + 1);
        c[k] += scalar(l.substr(1, star - 1));
    }
    return Poly<T>(std::move(c));
}

}  // namespace

PolyG parse_poly_gauss(std::string_view s) {
    return parse_poly<Gauss>(s, [](std::string_view t) { return parse_gauss(t); });
}

PolyE parse_poly_ext(std::string_view s, const Rational& modulus) {
    return parse_poly<Ext>(s, [&](std::string_view t) { return parse_ext(t, modulus); });
}

}  // namespace cgl
