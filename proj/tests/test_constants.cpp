#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cgl/formal.hpp"
#include "cgl/reduction.hpp"
#include "cgl/transcribed.hpp"
#include "cgl/verify.hpp"

using namespace cgl;

namespace {

struct Sample {
    const char* p;
    const char* delta;
};

// p in {3/2, 2, 3, 4, 7}, delta across each window, avoiding beta = 0 (delta^2 = p)
const Sample kSamples[] = {{"3/2", "1/2"}, {"3/2", "1"},   {"3/2", "2"}, {"3/2", "-1"}, {"2", "1/2"}, {"2", "1"},
                           {"2", "3/2"},   {"2", "3"},     {"3", "1/2"}, {"3", "1"},    {"3", "2"},   {"3", "3"},
                           {"3", "-1"},    {"4", "1/2"},   {"4", "1"},   {"4", "3"},    {"4", "7/2"}, {"7", "1/2"},
                           {"7", "1"},     {"7", "2"},     {"7", "4"}};

Rational R(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("critical beta") {
    CHECK(critical_beta(Rational(3), Rational(1)) == Rational(1, 2));
    CHECK(critical_beta(Rational(3), Rational(3)) == Rational(-1, 2));
    CHECK(critical_beta(Rational(2), Rational(1)) == Rational(1, 3));
    CHECK_THROWS_AS(critical_beta(Rational(3), Rational(0)), DomainError);
}

TEST_CASE("b^2 at p = 3, delta = 1 and the window edges") {
    CHECK(b_critical(Rational(3), Rational(1)) == Rational(1, 63));
    CHECK(printed::b2_formal(Rational(3), Rational(1)) == Rational(1, 63));
    // p_cri^2 = 15 at p = 3
    CHECK(b_critical(Rational(3), Rational(19, 5)).sign() > 0);
    CHECK_THROWS_AS(b_critical(Rational(3), Rational(4)), DomainError);
    CHECK_THROWS_AS(b_critical(Rational(3), Rational(-4)), DomainError);
    CHECK_THROWS_AS(b_critical(Rational(3), Rational(0)), DomainError);
    // no upper limit for p <= 2
    CHECK(b_critical(Rational(3, 2), Rational(50)).sign() > 0);
    CHECK(!pcri_squared(Rational(2)).has_value());
    CHECK(*pcri_squared(Rational(3)) == Rational(15));
}

TEST_CASE("derived parameters at p = 3, delta = 1") {
    const ProfileParams P = derive_params(Rational(3), Rational(1));
    CHECK(P.beta == Rational(1, 2));
    CHECK(P.nu == -P.b);
    // a = 2 kappa (1 - beta delta) b / (p-1)^2 = kappa b / 4
    CHECK(P.a == KappaGraded(P.b * Ext(Rational(1, 4)), 1));
}

TEST_CASE("the four cancellations hold on every sample") {
    for (const Sample& s : kSamples) {
        CAPTURE(s.p);
        CAPTURE(s.delta);
        const ConstantsBundle K = compute_constants(R(s.p), R(s.delta));
        CHECK(K.ode.coef_1_over_s.is_zero());
        CHECK(K.ode.coef_q2_over_sqrt_s.is_zero());
        CHECK(K.ode.coef_q2sq.is_zero());
        CHECK(K.ode.coef_s32.is_zero());
        // Ht_1 <= -3/2 (the reduction gives equality everywhere)
        CHECK(K.ode.Htilde1 == KappaGraded(Ext(Rational(-3, 2)), 0));
        // mu_cri: a0 != 0, real, and the 1/s^2 residual vanishes
        CHECK_FALSE(K.mu.a0.is_zero());
        CHECK(K.mu.mu.is_real());
        CHECK(K.mu.residual.is_zero());
        CHECK(K.mu.affine);
    }
}

TEST_CASE("frozen constants at p = 3, delta = 1") {
    const ConstantsBundle K = compute_constants(Rational(3), Rational(1));
    CHECK(K.P.mu == Ext(Rational(-124, 1323)));
    CHECK(K.B.c[2] == Rational(2));
    // independent oracle: direct expansion of R* in s^{-1/2}, decomposed on the
    // printed basis table by a linear solve
    CHECK(K.combos.A2 == KappaGraded(Ext(Rational(11, 504)), 1));
    CHECK(K.combos.At0 == KappaGraded(Ext(Rational(1, 84)), 1));
    CHECK(K.combos.At2 == KappaGraded(Ext(Rational(-437, 5292)), 1));
    // Bt_2 = (4 c2 - beta (6 + 12 + 2)) / kappa = -2/kappa, cancelling c2 delta / kappa
    CHECK(K.bq.Bt2 == KappaGraded(Ext(-2), -1));
    CHECK(K.bq.Bt2 + KappaGraded(Ext(K.B.c[2] * K.P.delta), -1) == KappaGraded(Ext(0), -1));
    // the printed closed form of Ht_1 gives -379/252; the computed value is -3/2
    CHECK(printed::htilde1_closed(Rational(3), Rational(1)) == Rational(-379, 252));
}

TEST_CASE("combinations from the definitions equal the slaved-mode series") {
    for (const Sample& s : {kSamples[1], kSamples[9], kSamples[18]}) {
        const ConstantsBundle K = compute_constants(R(s.p), R(s.delta));
        const ShrinkCombos a = shrink_combo_constants(K.P, K.T);
        const ShrinkCombos b = combos_from_reduction(K.P, K.red, K.T);
        CHECK(a.A2 == b.A2);
        CHECK(a.At0 == b.At0);
        CHECK(a.At2 == b.At2);
        CHECK(a.C2 == b.C2);
        CHECK(a.Ct0 == b.Ct0);
        CHECK(a.B2 == b.B2);
        CHECK(a.Bt0 == b.Bt0);
        CHECK(a.B4 == b.B4);
        CHECK(a.Bt4 == b.Bt4);
    }
}

TEST_CASE("beta = 0 is outside the combination machinery") {
    // p = 4, delta = 2: delta^2 = p gives beta = 0 and c_2 = 0
    CHECK(critical_beta(Rational(4), Rational(2)).is_zero());
    CHECK_THROWS_AS(compute_constants(Rational(4), Rational(2)), DomainError);
}

TEST_CASE("potential polynomials: regenerated against both printings") {
    const ProfileParams P = derive_params(Rational(3), Rational(1));
    const ProfileSeries S = expand_profile(P);
    const PotentialPolys W = potential_polys(S);
    const PotentialPolys A = printed::potentials_expanded(P), L = printed::potentials_compact(P);
    CHECK(W.W11 == A.W11);
    CHECK(W.W12 == A.W12);
    CHECK(W.W21 == A.W21);
    CHECK(W.W22 == A.W22);
    CHECK(L.W11 == A.W11);
    CHECK_FALSE(L.W22 == A.W22);
}

TEST_CASE("formal derivation: P is free of C and fixes b^2") {
    for (const Sample& s : {kSamples[0], kSamples[5], kSamples[9], kSamples[15], kSamples[19]}) {
        const FormalB2 f = formal_b2(R(s.p), R(s.delta));
        CHECK(f.c_free);
        CHECK(f.affine);
        CHECK(f.root == b_critical(R(s.p), R(s.delta)));
    }
    const FormalResult r = formal_run(Rational(3), Rational(1));
    CHECK(r.P.is_zero());
    CHECK(r.P_from_Q == r.P);
}

TEST_CASE("verify passes every identity at p = 3, delta = 1") {
    const VerifyReport rep = verify_all(Rational(3), Rational(1));
    CHECK(rep.identities_pass());
    CHECK(rep.count(CheckKind::identity, true) > 20);
}
