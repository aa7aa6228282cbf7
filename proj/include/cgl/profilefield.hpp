#pragma once
// Double-precision evaluation of the approximate profile and of every field built
// from it.  All derivatives of phi are closed-form; R is a near-cancellation of O(1)
// terms and finite differences would swamp it.
//
//   phi0(z)   = kappa (1 + b z^2/(p-1))^gamma,   gamma = -(1+i delta)/(p-1)
//   phi(y, s) = phi0(y s^{-1/4}) + (1+i delta) a / sqrt(s)
#include "cgl/params.hpp"
#include "cgl/quadrature.hpp"
#include "cgl/reduction.hpp"

#include <vector>

namespace cgl {

struct EvalContext {
    FloatParams params;
    double s = 1;
    double theta_prime = 0;
};

cplx phi0(double z, const FloatParams& P);
// -z phi0'/2 - (1+i delta) phi0/(p-1) + (1+i delta)|phi0|^{p-1} phi0
cplx profile_equation_residual(double z, const FloatParams& P);

struct PhiJet {
    cplx v, dy, dyy, ds;
};
PhiJet phi_jet(double y, const EvalContext& ctx);
cplx phi(double y, const EvalContext& ctx);

struct Potentials {
    cplx V1, V2;
};
Potentials potentials(double y, const EvalContext& ctx);

cplx nonlinear_B(cplx q, double y, const EvalContext& ctx);
cplx rest_R(double y, const EvalContext& ctx);
cplx rest_Rstar(double y, const EvalContext& ctx);

// C^2 quintic step: 1 on [0,1], 0 on [2, inf)
double chi0(double xi);
double cutoff_chi(double y, double s, double K);

// smallest K with (p-1+b K^2)^{-1} <= 0.1/(p-1)
double default_K(const FloatParams& P);

// The large-s expansions at fixed y, from the exact series.
struct TaylorPolys {
    PolyC W11, W12, W21, W22;
    std::vector<PolyC> Rstar;  // R* = sum_k Rstar[k](y) s^{-(k+1)/2}, k = 0, 1
};
TaylorPolys taylor_polys(const ConstantsBundle& K);

// Float values of the shrinking-set combinations (kappa restored).
struct FloatCombos {
    double A2 = 0, At0 = 0, At2 = 0;
    double C2 = 0, Ct0 = 0, C4 = 0, Ct4 = 0;
    double B2 = 0, Bt0 = 0, B4 = 0, Bt4 = 0;
};
FloatCombos float_combos(const ShrinkCombos& c, double kappa);

struct InitialDataSpec {
    double s0 = 100;
    double d0_tilde = 0, d1_tilde = 0;
    double K = 0;
    double A = 20;
};

class GridProjector;

struct InitialData {
    std::vector<cplx> psi;
    double d0 = 0;
    double p0_of_psi = 0;    // P_{0,M}(psi) after solving for d0
    double p0_of_ichi = 0;   // P_{0,M}(i chi(2y, s0)), the d0 denominator
};

// Throws DomainError when P_{0,M}(i chi(2y,s0)) is too small to solve for d0.
InitialData initial_data(const InitialDataSpec& spec, const FloatParams& P, const FloatCombos& c, const BasisTable& B,
                         const UniformGrid& grid, const GridProjector& proj);

// u*(x) as x -> 0; |x| must be in (0, 1)
cplx final_profile(double x, const FloatParams& P);

}  // namespace cgl
