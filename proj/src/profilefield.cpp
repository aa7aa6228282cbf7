#include "cgl/profilefield.hpp"

#include "cgl/spectral.hpp"

#include <cmath>

namespace cgl {

namespace {

cplx gamma_of(const FloatParams& P) { return cplx(-1.0, -P.delta) / (P.p - 1); }

cplx abs_pow(const cplx& v, double e) { return std::pow(std::norm(v), e / 2); }

}  // namespace

cplx phi0(double z, const FloatParams& P) {
    const double u = 1 + P.b * z * z / (P.p - 1);
    return P.kappa * std::pow(u, gamma_of(P));
}

cplx profile_equation_residual(double z, const FloatParams& P) {
    const cplx g = gamma_of(P), oid(1.0, P.delta);
    const double c = P.b / (P.p - 1), u = 1 + c * z * z;
    const cplx f = P.kappa * std::pow(u, g);
    const cplx fz = P.kappa * g * std::pow(u, g - 1.0) * (2 * c * z);
    return -0.5 * z * fz - oid * f / (P.p - 1) + oid * abs_pow(f, P.p - 1) * f;
}

PhiJet phi_jet(double y, const EvalContext& ctx) {
    const FloatParams& P = ctx.params;
    const cplx g = gamma_of(P), oid(1.0, P.delta);
    const double s = ctx.s, s4 = std::pow(s, -0.25), sq = std::sqrt(s);
    const double z = y * s4, c = P.b / (P.p - 1), u = 1 + c * z * z;
    const cplx ug = std::pow(u, g);
    const cplx f = P.kappa * ug;
    const cplx fz = P.kappa * g * ug / u * (2 * c * z);
    const cplx fzz = P.kappa * g * (ug / u * (2 * c) + (g - 1.0) * ug / (u * u) * (4 * c * c * z * z));
    PhiJet J;
    J.v = f + oid * P.a / sq;
    J.dy = fz * s4;
    J.dyy = fzz * s4 * s4;
    J.ds = -0.25 * z * fz / s - 0.5 * oid * P.a / (s * sq);
    return J;
}

cplx phi(double y, const EvalContext& ctx) { return phi_jet(y, ctx).v; }

Potentials potentials(double y, const EvalContext& ctx) {
    const FloatParams& P = ctx.params;
    const cplx oid(1.0, P.delta), v = phi(y, ctx);
    const double inv = 1 / (P.p - 1);
    Potentials r;
    r.V1 = oid * ((P.p + 1) / 2) * (abs_pow(v, P.p - 1) - inv);
    r.V2 = oid * ((P.p - 1) / 2) * (abs_pow(v, P.p - 3) * v * v - inv);
    return r;
}

cplx nonlinear_B(cplx q, double y, const EvalContext& ctx) {
    const FloatParams& P = ctx.params;
    const cplx oid(1.0, P.delta), v = phi(y, ctx), w = v + q;
    const cplx a = abs_pow(v, P.p - 1);
    return oid * (abs_pow(w, P.p - 1) * w - a * v - a * q -
                  ((P.p - 1) / 2) * abs_pow(v, P.p - 3) * v * (v * std::conj(q) + std::conj(v) * q));
}

cplx rest_R(double y, const EvalContext& ctx) {
    const FloatParams& P = ctx.params;
    const cplx oid(1.0, P.delta), ib(1.0, P.beta);
    const PhiJet J = phi_jet(y, ctx);
    return -J.ds + ib * J.dyy - 0.5 * y * J.dy - oid * J.v / (P.p - 1) + oid * abs_pow(J.v, P.p - 1) * J.v;
}

cplx rest_Rstar(double y, const EvalContext& ctx) {
    const FloatParams& P = ctx.params;
    const double rate = P.nu / (2 * std::sqrt(ctx.s)) + P.mu / ctx.s + ctx.theta_prime;
    return rest_R(y, ctx) - cplx(0.0, rate) * phi(y, ctx);
}

double chi0(double xi) {
    if (xi <= 1) return 1;
    if (xi >= 2) return 0;
    const double t = xi - 1;
    return 1 - t * t * t * (10 - 15 * t + 6 * t * t);
}

double cutoff_chi(double y, double s, double K) { return chi0(std::abs(y) / (K * std::pow(s, 0.25))); }

double default_K(const FloatParams& P) { return std::sqrt(9 * (P.p - 1) / P.b); }

TaylorPolys taylor_polys(const ConstantsBundle& K) {
    const PotentialPolys W = potential_polys(K.S);
    TaylorPolys t;
    t.W11 = to_float(W.W11);
    t.W12 = to_float(W.W12);
    t.W21 = to_float(W.W21);
    t.W22 = to_float(W.W22);
    const double kappa = FloatParams::from(K.P).kappa;
    const Field Rs = rest_star(K.P, K.S, K.P.mu);
    for (int k = 0; k <= 1; ++k) t.Rstar.push_back(to_float(Rs.get(k + 1, 0)) * cplx(kappa));
    return t;
}

FloatCombos float_combos(const ShrinkCombos& c, double kappa) {
    auto f = [&](const KappaGraded& v) { return v.to_complex(kappa).real(); };
    FloatCombos r;
    r.A2 = f(c.A2);
    r.At0 = f(c.At0);
    r.At2 = f(c.At2);
    r.C2 = f(c.C2);
    r.Ct0 = f(c.Ct0);
    r.C4 = f(c.C4);
    r.Ct4 = f(c.Ct4);
    r.B2 = f(c.B2);
    r.Bt0 = f(c.Bt0);
    r.B4 = f(c.B4);
    r.Bt4 = f(c.Bt4);
    return r;
}

InitialData initial_data(const InitialDataSpec& spec, const FloatParams& P, const FloatCombos& c, const BasisTable& B,
                         const UniformGrid& grid, const GridProjector& proj) {
    if (spec.s0 < 1) throw DomainError("initial data: s0 must be at least 1");
    if (B.M < 4) throw std::invalid_argument("initial data: basis must reach n = 4");
    const double K = spec.K > 0 ? spec.K : default_K(P);
    const double s0 = spec.s0, A = spec.A;
    const double s1 = 1 / s0, s32 = std::pow(s0, -1.5), s74 = std::pow(s0, -1.75);

    std::vector<std::pair<double, PolyC>> terms = {
        {A * spec.d0_tilde * s74 + c.At0 * s1 + (c.Bt0 + c.Ct0 * c.At2) * s32, to_float(B.ht[0])},
        {A * spec.d1_tilde * s32, to_float(B.ht[1])},
        {c.At2 * s1, to_float(B.ht[2])},
        {c.A2 * s1 + (c.B2 + c.C2 * c.At2) * s32, to_float(B.h[2])},
        {(c.Bt4 + c.Ct4 * c.At2) * s32, to_float(B.ht[4])},
        {(c.B4 + c.C4 * c.At2) * s32, to_float(B.h[4])},
    };
    const PolyC h0 = to_float(B.h[0]);

    InitialData out;
    std::vector<cplx> base(grid.N), h0chi(grid.N);
    for (int i = 0; i < grid.N; ++i) {
        const double y = grid.y(i), chi = cutoff_chi(2 * y, s0, K);
        if (chi == 0) continue;
        cplx v = 0;
        for (const auto& [amp, poly] : terms) v += amp * poly.eval(cplx(y));
        base[i] = v * chi;
        h0chi[i] = h0.eval(cplx(y)) * chi;
    }
    out.p0_of_ichi = proj.q0(h0chi.data());
    if (std::abs(out.p0_of_ichi) < 1e-8) throw DomainError("initial data: P_0(i chi) vanishes; s0 is too small");
    out.d0 = -proj.q0(base.data()) / out.p0_of_ichi;
    out.psi.resize(grid.N);
    for (int i = 0; i < grid.N; ++i) out.psi[i] = base[i] + out.d0 * h0chi[i];
    out.p0_of_psi = proj.q0(out.psi.data());
    return out;
}

cplx final_profile(double x, const FloatParams& P) {
    const double ax = std::abs(x);
    if (!(ax > 0 && ax < 1)) throw DomainError("final profile: need 0 < |x| < 1");
    const double L2 = 2 * std::abs(std::log(ax));
    const cplx phase = std::exp(cplx(0.0, P.nu * std::sqrt(L2) + P.mu * std::log(L2)));
    return phase * std::pow(P.b * ax * ax / std::sqrt(L2), gamma_of(P));
}

}  // namespace cgl
