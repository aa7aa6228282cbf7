#pragma once
// Reduced dynamics on the slow manifold.
//
// With q(y,s) = sum_n q_n h_n + qt_n ht_n and q_0 == 0 (modulation), every even mode
// except the null mode x = qt_2 is slaved:  q_n = sum c_{k,j} eps^k x^j.  The engine
// iterates
//     theta' = -G_0/H_0,   lambda m = d/ds m - (G_m + theta' H_m - lambda m)
// to a fixed point in the truncated series ring, where dq/ds = G(q) + theta' H(q) is the
// q-equation.  The coefficients of x' are the ODE of the null mode.
#include "cgl/tables.hpp"

namespace cgl {

struct Reduction {
    Scalars theta_prime;
    Scalars xprime;
    std::map<int, Scalars> q, qt;  // even n
    int iterations = 0;
    int weight = 0;
};

struct ReductionOptions {
    int nmax = 8;     // highest slaved mode
    int weight = 4;   // truncation weight k + 2j
    int max_iter = 40;
};

Reduction reduce(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B, const Ext& mu,
                 const ReductionOptions& opt = {});

// x' = c20/s + c11 x/sqrt(s) + c02 x^2 + c30/s^{3/2} + H1 x/s + H2/s^2 + ...
struct OdeCoefficients {
    KappaGraded coef_1_over_s;        // grade 1
    KappaGraded coef_q2_over_sqrt_s;  // grade 0
    KappaGraded coef_q2sq;            // grade -1
    KappaGraded coef_s32;             // grade 1
    KappaGraded Htilde1;              // grade 0
    KappaGraded Htilde2;              // grade 1
};
OdeCoefficients ode_coefficients(const Reduction& r);

// The s^{-3/2} coefficient equals b (alpha + gamma b^2) for generic b.  Reads alpha, gamma
// from reductions at two moduli, confirms at a third, returns the root -alpha/gamma.
struct BRoot {
    Rational alpha, gamma, root;
    bool affine = false;
};
BRoot b2_from_s32(const ProfileParams& P);

struct ShrinkCombos {
    // coefficients of 1/s (A), q~_2/sqrt(s) (C) and 1/s^{3/2} (B) in the slaved modes
    KappaGraded A2, At0, At2;
    KappaGraded C2, Ct0, C4, Ct4;
    KappaGraded B2, Bt0, B4, Bt4;
    KappaGraded X2, Xt0;  // reconstructed
};

// From the printed definitions (tables + reconstructed X2, Xt0).
ShrinkCombos shrink_combo_constants(const ProfileParams& P, const CoeffTables& T);
// Directly from the slaved series.
ShrinkCombos combos_from_reduction(const ProfileParams& P, const Reduction& r, const CoeffTables& T);

struct MuResult {
    KappaGraded a0, a1;   // f(mu) = a0 mu + a1, grade 1
    Ext mu;               // -a1/a0, grade 0
    bool affine = false;  // second difference of f vanishes
    bool h2_mu_free = false;
    KappaGraded residual; // 1/s^2 coefficient of the Q~_2 equation at mu
};
// Throws DomainError if a0 == 0.
MuResult mu_critical(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B);

// (p, delta) -> parameters with mu = mu_cri filled in
ProfileParams critical_params(const Rational& p, const Rational& delta);

// The whole exact pipeline for one (p, delta).
struct ConstantsBundle {
    ProfileParams P;
    ProfileSeries S;
    BasisTable B;
    CoeffTables T;
    Reduction red;
    OdeCoefficients ode;
    MuResult mu;
    BConstants bq;
    ShrinkCombos combos;
};
ConstantsBundle compute_constants(const Rational& p, const Rational& delta);

}  // namespace cgl
