#pragma once
// Self-similar w-equation
//     w_s = (1+i beta) w_yy - (y/2) w_y - (1+i delta) w/(p-1) + (1+i delta)|w|^{p-1} w
// on [-L, L] with w pinned to e^{i Phi} phi(+-L, s), Phi = nu sqrt(s) + mu log s + theta.
//
// IMEX: the whole linear part is implicit (one banded factorisation per run), the
// reaction is explicit.  After every step theta is re-solved so that P_0(q) = 0 with
// q = e^{-i Phi} w - phi, and the modes of q are compared with the shrinking set.
#include "cgl/kernels.hpp"
#include "cgl/profilefield.hpp"
#include "cgl/spectral.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace cgl {

enum class Scheme { imex1, imex2 };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

// Implicit part a2 q'' - (y/2) q' + c0 q with Dirichlet rows at both ends.  `order`
// is the accuracy of the interior stencils (2 or 4); the points next to the boundary
// always use the three-point stencils.
class ImexStepper {
public:
    ImexStepper(const UniformGrid& g, cplx a2, cplx c0, double ds, Scheme scheme, int order, Exec ex = Exec::serial);

    // one step; `expl` is the explicit term at the current level (may be null for none)
    void step(std::vector<cplx>& w, const std::vector<cplx>* expl, cplx left, cplx right);
    void reset() { have_prev_ = false; }

private:
    UniformGrid g_;
    double ds_;
    Scheme scheme_;
    Exec ex_;
    PentaLU lu1_, lu2_;
    bool have_prev_ = false;
    std::vector<cplx> w_prev_, n_prev_, rhs_;
};

// dq/ds = L_beta q for `steps` steps; Dirichlet values boundary(s) at the new level.
using BoundaryFn = std::function<std::pair<cplx, cplx>(double s)>;
std::vector<cplx> evolve_linear(std::vector<cplx> q, const UniformGrid& g, double beta, double ds, int steps, Scheme scheme,
                                int order, const BoundaryFn& boundary, Exec ex = Exec::serial);

struct SimConfig {
    Rational p{3}, delta{1};
    double L = 90;
    int N = 9216;
    double ds = 5e-4;
    double s0 = 100, s_end = 105;
    double K = 0;       // 0: default_K
    double K_data = 6;  // cutoff scale of the initial data, chi(2y, s0) built with it
    double A = 20;
    int M_track = 6;
    Scheme scheme = Scheme::imex2;
    int order = 4;
    Exec exec = Exec::serial;

    // throws DomainError naming the violated invariant
    void validate(double K_resolved) const;
};

// Named bounds of the shrinking set, in the order of StepRecord::ratios.
std::vector<std::string> bound_names(int M_track);

struct StepRecord {
    double s = 0, theta = 0, theta_prime = 0;
    double p0 = 0;  // P_0(q) after modulation
    std::vector<double> q, qt;
    double Qt0 = 0, Q2 = 0, Qt2 = 0, Q4 = 0, Qt4 = 0;
    double qe_norm = 0, qminus_norm = 0;
    std::vector<double> ratios;  // measured / bound
    bool inside = true;
};

// Everything a run needs that does not change along it.  Shared read-only by
// concurrent probe runs.
class Simulator {
public:
    explicit Simulator(const SimConfig& cfg);

    const SimConfig& config() const { return cfg_; }
    const FloatParams& params() const { return P_; }
    const FloatCombos& combos() const { return combos_; }
    const BasisTable& basis() const { return B_; }
    const GridProjector& projector() const { return *proj_; }
    const UniformGrid& grid() const { return grid_; }
    double K() const { return K_; }
    double Htilde1() const { return H1_; }

    // phase Phi(s) without theta
    double base_phase(double s) const;
    void profile_on_grid(double s, std::vector<cplx>& out) const;

private:
    SimConfig cfg_;
    FloatParams P_;
    FloatCombos combos_;
    BasisTable B_;
    std::unique_ptr<GridProjector> proj_;
    UniformGrid grid_;
    double K_ = 0, H1_ = 0;
};

struct SimState {
    std::vector<cplx> w;
    double s = 0, theta = 0, theta_prime = 0;
    std::vector<double> theta_hist;  // last values, for the smoothed theta'
    int steps = 0;
    bool modulation_flag = false;    // Newton failed at some step; previous theta kept
};

SimState initial_state(const Simulator& sim, const std::vector<cplx>& psi);

// Newton on F(theta) = P_0(e^{-i Phi} w - phi); updates state.theta
bool modulate(const Simulator& sim, SimState& st);

StepRecord diagnose(const Simulator& sim, const SimState& st);

struct ExitMap {
    double phi0 = 0, phi1 = 0;  // s^{7/4} Qt0/A, s^{3/2} qt1/A
};
ExitMap exit_map(const Simulator& sim, const StepRecord& r);

struct RunOptions {
    bool stop_on_exit = true;
    int record_every = 1;  // 0: keep only the first and last records
};

struct RunResult {
    std::vector<StepRecord> history;
    StepRecord last;
    bool exited = false;
    double exit_s = 0;
    std::string exit_component;
    ExitMap phi;
    double d0 = 0;
    bool modulation_flag = false;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws NumericalFailure on a non-finite state.
RunResult run(const Simulator& sim, const InitialDataSpec& spec, const RunOptions& opt = {});

}  // namespace cgl
