#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgl/exactnum.hpp"

using namespace cgl;

TEST_CASE("rational arithmetic is exact and canonical") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational(8, 4).str() == "2");
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("rational parse round trip and errors") {
    for (const char* s : {"0", "7", "-7", "3/2", "-124/1323", "123456789012345678901234567891/2"})
        CHECK(Rational::parse(s).str() == s);
    CHECK(Rational::parse(" 6/4 ") == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), DivideByZero);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivideByZero);
}

TEST_CASE("gaussian rationals") {
    const Gauss z(Rational(1), Rational(2));
    CHECK(z * z.conj() == Gauss(Rational(5)));
    CHECK(z * z.inv() == Gauss(1));
    CHECK(Gauss::i() * Gauss::i() == Gauss(-1));
    CHECK_THROWS_AS(Gauss().inv(), DivideByZero);
    CHECK(parse_gauss(to_text(z)) == z);
}

TEST_CASE("b adjoined with modulus 1/63") {
    // b^2 = b_cri^2(3, 1) = 1/63
    const Rational m(1, 63);
    const Ext b = Ext::b(m);
    CHECK(b * b == Ext(m));
    const Ext x(Gauss(Rational(1), Rational(1)), Gauss(Rational(2)), m);
    CHECK(x * x.inv() == Ext(1));
    CHECK(parse_ext(to_text(x), m) == x);
    // b is irrational, so c0 + c1 b vanishes only when both parts do
    CHECK_FALSE((Ext(1) + b).is_zero());
    CHECK(std::abs(b.to_complex().real() - 1 / std::sqrt(63.0)) < 1e-15);
}

TEST_CASE("values with different moduli do not combine") {
    const Ext b1 = Ext::b(Rational(1, 63)), b2 = Ext::b(Rational(1, 3));
    CHECK_THROWS(b1 + b2);
    // a value free of b combines with either
    CHECK_NOTHROW(Ext(3) + b1);
    CHECK_NOTHROW(Ext(3) * b2);
}

TEST_CASE("kappa grades: sums need equal grades, products add them") {
    const KappaGraded a(Ext(2), 1), b(Ext(3), 1), c(Ext(5), -1);
    CHECK(a + b == KappaGraded(Ext(5), 1));
    CHECK((a * c).grade() == 0);
    CHECK_THROWS_AS(a + c, MixedKappaGrade);
    // a zero value has no grade to clash with
    CHECK_NOTHROW(a + KappaGraded(Ext(0), 7));
    const double kappa = std::sqrt(0.5);
    CHECK(std::abs(a.to_complex(kappa) - cplx(2 * kappa)) < 1e-15);
    CHECK(parse_kappa(to_text(c), Rational()) == c);
}

TEST_CASE("polynomial algebra") {
    const PolyG p{Gauss(1), Gauss(0), Gauss(Rational(0), Rational(1))};  // 1 + i y^2
    const PolyG q{Gauss(-1), Gauss(1)};                                  // y - 1
    CHECK((p * q).degree() == 3);
    CHECK((p * q).eval(Gauss(1)) == Gauss());
    CHECK(p.derivative() == PolyG{Gauss(0), Gauss(Rational(0), Rational(2))});
    CHECK(p.shifted().coeff(3) == Gauss::i());
    CHECK((p - p).is_zero());
    CHECK(p.real_part() == PolyG{Gauss(1)});
    CHECK(parse_poly_gauss(to_text(p * q)) == p * q);
}

TEST_CASE("binomial series of (1+u)^gamma") {
    // (1 + y)^{1/2}: 1 + y/2 - y^2/8 + y^3/16
    const PolyG u{Gauss(0), Gauss(1)};
    const PolyG s = binomial_series(Gauss(Rational(1, 2)), u, 3);
    CHECK(s.coeff(0) == Gauss(1));
    CHECK(s.coeff(1) == Gauss(Rational(1, 2)));
    CHECK(s.coeff(2) == Gauss(Rational(-1, 8)));
    CHECK(s.coeff(3) == Gauss(Rational(1, 16)));
    CHECK(binomial(Gauss(Rational(-1)), 4) == Gauss(1));
}
