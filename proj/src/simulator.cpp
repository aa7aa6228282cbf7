#include "cgl/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace cgl {

std::string to_string(Scheme s) { return s == Scheme::imex1 ? "imex1" : "imex2"; }

Scheme parse_scheme(const std::string& s) {
    if (s == "imex1") return Scheme::imex1;
    if (s == "imex2") return Scheme::imex2;
    throw std::invalid_argument("unknown scheme '" + s + "' (imex1 or imex2)");
}

namespace {

// Diagonals of alpha I - ds A, A = a2 D2 - (y/2) D1 + c0, Dirichlet identity rows.
std::vector<std::vector<cplx>> implicit_diagonals(const UniformGrid& g, cplx a2, cplx c0, double ds, double alpha,
                                                  int order) {
    const int N = g.N;
    const double h = g.dy();
    std::vector<std::vector<cplx>> d(5, std::vector<cplx>(N, 0.0));
    d[2][0] = d[2][N - 1] = 1.0;
    for (int i = 1; i < N - 1; ++i) {
        const double y = g.y(i);
        double d2[5] = {0, 0, 0, 0, 0}, d1[5] = {0, 0, 0, 0, 0};
        if (order == 4 && i >= 2 && i <= N - 3) {
            const double a = 1 / (12 * h * h), b = 1 / (12 * h);
            d2[0] = -a, d2[1] = 16 * a, d2[2] = -30 * a, d2[3] = 16 * a, d2[4] = -a;
            d1[0] = b, d1[1] = -8 * b, d1[3] = 8 * b, d1[4] = -b;
        } else {
            d2[1] = 1 / (h * h), d2[2] = -2 / (h * h), d2[3] = 1 / (h * h);
            d1[1] = -1 / (2 * h), d1[3] = 1 / (2 * h);
        }
        for (int k = 0; k < 5; ++k) {
            cplx A = a2 * d2[k] - 0.5 * y * d1[k];
            if (k == 2) A += c0;
            d[k][i] = (k == 2 ? alpha : 0.0) - ds * A;
        }
    }
    return d;
}

}  // namespace

ImexStepper::ImexStepper(const UniformGrid& g, cplx a2, cplx c0, double ds, Scheme scheme, int order, Exec ex)
    : g_(g), ds_(ds), scheme_(scheme), ex_(ex) {
    if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
    if (g.N < 8) throw std::invalid_argument("grid too small");
    lu1_ = PentaLU(implicit_diagonals(g, a2, c0, ds, 1.0, order));
    if (scheme == Scheme::imex2) lu2_ = PentaLU(implicit_diagonals(g, a2, c0, ds, 1.5, order));
    rhs_.resize(g.N);
}

void ImexStepper::step(std::vector<cplx>& w, const std::vector<cplx>* expl, cplx left, cplx right) {
    const int N = g_.N;
    static const std::vector<cplx> none;
    const bool has_n = expl != nullptr;
    const std::vector<cplx>& Nw = has_n ? *expl : none;
    const bool second = scheme_ == Scheme::imex2 && have_prev_;
    if (second) {
        if (has_n)
            combine(rhs_.data(), N, 2.0, w.data(), -0.5, w_prev_.data(), 2 * ds_, Nw.data(), -ds_, n_prev_.data(), ex_);
        else
            parallel_for(N, ex_, [&](int i) { rhs_[i] = 2.0 * w[i] - 0.5 * w_prev_[i]; });
    } else {
        if (has_n)
            combine(rhs_.data(), N, 1.0, w.data(), 0.0, nullptr, ds_, Nw.data(), 0.0, nullptr, ex_);
        else
            rhs_ = w;
    }
    if (scheme_ == Scheme::imex2) {
        w_prev_ = w;
        if (has_n) n_prev_ = Nw;
        else n_prev_.assign(N, 0.0);
        have_prev_ = true;
    }
    rhs_[0] = left;
    rhs_[N - 1] = right;
    (second ? lu2_ : lu1_).solve(rhs_.data());
    w.swap(rhs_);
    rhs_.resize(N);
}

std::vector<cplx> evolve_linear(std::vector<cplx> q, const UniformGrid& g, double beta, double ds, int steps, Scheme scheme,
                                int order, const BoundaryFn& boundary, Exec ex) {
    ImexStepper st(g, cplx(1.0, beta), 0.0, ds, scheme, order, ex);
    for (int n = 1; n <= steps; ++n) {
        const auto [l, r] = boundary(n * ds);
        st.step(q, nullptr, l, r);
    }
    return q;
}

// ---------------------------------------------------------------- configuration

void SimConfig::validate(double K) const {
    if (!(N >= 16)) throw DomainError("grid.N must be at least 16");
    if (!(ds > 0 && ds <= 1e-3)) throw DomainError("ds must lie in (0, 1e-3]");
    if (!(s0 > 1)) throw DomainError("s0 must exceed 1");
    if (!(s_end > s0)) throw DomainError("s_end must exceed s0");
    if (!(A >= 1)) throw DomainError("A must be at least 1");
    if (!(K >= 1)) throw DomainError("K must be at least 1");
    if (!(K_data >= 1 && K_data <= K)) throw DomainError("K_data must lie in [1, K]");
    if (M_track < 4 || M_track % 2 || M_track > kConstantsBasisM)
        throw DomainError("M_track must be even and in [4, " + std::to_string(kConstantsBasisM) + "]");
    if (order != 2 && order != 4) throw DomainError("stencil order must be 2 or 4");
    const double need = 2 * K * std::pow(s_end, 0.25) + 10;
    if (L < need) throw DomainError("grid.L = " + std::to_string(L) + " is below 2 K s_end^{1/4} + 10 = " + std::to_string(need));
}

std::vector<std::string> bound_names(int M) {
    std::vector<std::string> n = {"q0", "q1", "qt1", "q3", "qt3", "Qt0", "Q2", "Qt2", "Q4", "Qt4"};
    for (int j = 5; j <= M; ++j) {
        n.push_back("q" + std::to_string(j));
        n.push_back("qt" + std::to_string(j));
    }
    n.push_back("qe");
    n.push_back("qminus");
    return n;
}

Simulator::Simulator(const SimConfig& cfg) : cfg_(cfg) {
    const ConstantsBundle C = compute_constants(cfg.p, cfg.delta);
    P_ = FloatParams::from(C.P);
    combos_ = float_combos(C.combos, P_.kappa);
    B_ = C.B;
    H1_ = C.ode.Htilde1.to_complex(P_.kappa).real();
    K_ = cfg.K > 0 ? cfg.K : default_K(P_);
    cfg_.validate(K_);
    grid_ = UniformGrid{cfg.L, cfg.N};
    proj_ = std::make_unique<GridProjector>(grid_, float_basis(B_), cfg.M_track, cfg.exec);
}

double Simulator::base_phase(double s) const { return P_.nu * std::sqrt(s) + P_.mu * std::log(s); }

void Simulator::profile_on_grid(double s, std::vector<cplx>& out) const {
    out.resize(grid_.N);
    const EvalContext ctx{P_, s, 0};
    parallel_for(grid_.N, cfg_.exec, [&](int i) { out[i] = phi(grid_.y(i), ctx); });
}

// ---------------------------------------------------------------- one run

SimState initial_state(const Simulator& sim, const std::vector<cplx>& psi) {
    SimState st;
    st.s = sim.config().s0;
    std::vector<cplx> ph;
    sim.profile_on_grid(st.s, ph);
    const cplx e = std::exp(cplx(0.0, sim.base_phase(st.s)));
    st.w.resize(ph.size());
    for (size_t i = 0; i < ph.size(); ++i) st.w[i] = e * (ph[i] + psi[i]);
    st.theta_hist = {0.0};
    return st;
}

bool modulate(const Simulator& sim, SimState& st) {
    const GridProjector& pr = sim.projector();
    const int N = sim.grid().N;
    std::vector<cplx> U(N), mU(N), ph;
    const cplx e = std::exp(cplx(0.0, -sim.base_phase(st.s)));
    parallel_for(N, sim.config().exec, [&](int i) {
        U[i] = e * st.w[i];
        mU[i] = cplx(0.0, -1.0) * U[i];
    });
    sim.profile_on_grid(st.s, ph);
    // P_0 is real-linear, so P_0(e^{-i theta} U) = cos(theta) P_0(U) + sin(theta) P_0(-iU)
    const double a = pr.q0(U.data()), b = pr.q0(mU.data()), c = pr.q0(ph.data());
    double th = st.theta;
    for (int it = 0; it < 50; ++it) {
        const double F = a * std::cos(th) + b * std::sin(th) - c;
        if (std::abs(F) <= 1e-11) {
            st.theta = th;
            return true;
        }
        const double dF = -a * std::sin(th) + b * std::cos(th);
        if (dF == 0 || !std::isfinite(dF)) break;
        th -= F / dF;
    }
    st.modulation_flag = true;
    return false;
}

StepRecord diagnose(const Simulator& sim, const SimState& st) {
    const SimConfig& cfg = sim.config();
    const UniformGrid& g = sim.grid();
    const GridProjector& pr = sim.projector();
    const FloatCombos& c = sim.combos();
    const int N = g.N, M = cfg.M_track;
    const double s = st.s, A = cfg.A;

    std::vector<cplx> ph, qb(N), qe(N);
    sim.profile_on_grid(s, ph);
    const cplx e = std::exp(cplx(0.0, -(sim.base_phase(s) + st.theta)));
    parallel_for(N, cfg.exec, [&](int i) {
        const double chi = cutoff_chi(g.y(i), s, sim.K());
        const cplx q = e * st.w[i] - ph[i];
        qb[i] = chi * q;
        qe[i] = (1 - chi) * q;
    });

    StepRecord r;
    r.s = s;
    r.theta = st.theta;
    r.theta_prime = st.theta_prime;
    std::vector<cplx> Q, rem;
    pr.moments(qb.data(), Q);
    pr.modes_of(Q, r.q, r.qt);
    r.p0 = r.q[0];
    pr.remainder(qb.data(), Q, rem);
    for (int i = 0; i < N; ++i) rem[i] /= 1 + std::pow(std::abs(g.y(i)), M + 1);
    r.qminus_norm = sup_abs(rem.data(), N, cfg.exec);
    r.qe_norm = sup_abs(qe.data(), N, cfg.exec);

    const double rs = 1 / std::sqrt(s), s32 = std::pow(s, -1.5), x = r.qt[2];
    r.Qt0 = r.qt[0] - (c.At0 / s + c.Bt0 * s32 + c.Ct0 * x * rs);
    r.Q2 = r.q[2] - (c.A2 / s + c.B2 * s32 + c.C2 * x * rs);
    r.Qt2 = x - c.At2 / s;
    r.Q4 = r.q[4] - (c.B4 * s32 + c.C4 * x * rs);
    r.Qt4 = r.qt[4] - (c.Bt4 * s32 + c.Ct4 * x * rs);

    auto ratio = [](double v, double bound) { return std::abs(v) / bound; };
    r.ratios = {ratio(r.q[0], s32),
                ratio(r.q[1], std::pow(A, 4) * s32),
                ratio(r.qt[1], A * s32),
                ratio(r.q[3], std::pow(A, 3) * s32),
                ratio(r.qt[3], std::pow(A, 3) * s32),
                ratio(r.Qt0, A * std::pow(s, -1.75)),
                ratio(r.Q2, std::pow(A, 8) * std::pow(s, -1.75)),
                ratio(r.Qt2, std::pow(A, 10) * std::pow(s, -1.25)),
                ratio(r.Q4, std::pow(A, 7) * std::pow(s, -1.75)),
                ratio(r.Qt4, std::pow(A, 4) * std::pow(s, -1.75))};
    for (int j = 5; j <= M; ++j) {
        const double b = std::pow(A, j) * std::pow(s, -(j + 1) / 4.0);
        r.ratios.push_back(ratio(r.q[j], b));
        r.ratios.push_back(ratio(r.qt[j], b));
    }
    r.ratios.push_back(ratio(r.qe_norm, std::pow(A, M + 2) * std::pow(s, -0.25)));
    r.ratios.push_back(ratio(r.qminus_norm, std::pow(A, M + 1) * std::pow(s, -(M + 2) / 4.0)));
    for (double v : r.ratios)
        if (!(v <= 1)) r.inside = false;
    return r;
}

ExitMap exit_map(const Simulator& sim, const StepRecord& r) {
    const double A = sim.config().A;
    return {std::pow(r.s, 1.75) * r.Qt0 / A, std::pow(r.s, 1.5) * r.qt[1] / A};
}

RunResult run(const Simulator& sim, const InitialDataSpec& spec_in, const RunOptions& opt) {
    const SimConfig& cfg = sim.config();
    const FloatParams& P = sim.params();
    const UniformGrid& g = sim.grid();
    InitialDataSpec spec = spec_in;
    spec.s0 = cfg.s0;
    spec.A = cfg.A;
    spec.K = cfg.K_data;
    const InitialData id = initial_data(spec, P, sim.combos(), sim.basis(), g, sim.projector());

    RunResult out;
    out.d0 = id.d0;
    SimState st = initial_state(sim, id.psi);
    modulate(sim, st);
    st.theta_hist = {st.theta};

    ImexStepper stepper(g, cplx(1.0, P.beta), cplx(-1.0, -P.delta) / (P.p - 1), cfg.ds, cfg.scheme, cfg.order, cfg.exec);
    const cplx oid(1.0, P.delta);
    const EvalContext edge0{P, cfg.s0, 0};
    std::vector<cplx> nl(g.N);

    auto record = [&](const StepRecord& r, bool force) {
        if (force || (opt.record_every > 0 && st.steps % opt.record_every == 0)) out.history.push_back(r);
    };
    auto check_exit = [&](const StepRecord& r) {
        if (r.inside || out.exited) return;
        out.exited = true;
        out.exit_s = r.s;
        const auto names = bound_names(cfg.M_track);
        size_t worst = 0;
        for (size_t k = 1; k < r.ratios.size(); ++k)
            if (r.ratios[k] > r.ratios[worst]) worst = k;
        out.exit_component = names[worst];
    };

    StepRecord r = diagnose(sim, st);
    record(r, true);
    check_exit(r);
    const int total = static_cast<int>(std::llround((cfg.s_end - cfg.s0) / cfg.ds));
    while (st.steps < total && !(out.exited && opt.stop_on_exit)) {
        reaction(st.w.data(), nl.data(), g.N, P.p, oid, cfg.exec);
        const double s_new = cfg.s0 + (st.steps + 1) * cfg.ds;
        EvalContext edge = edge0;
        edge.s = s_new;
        const cplx rot = std::exp(cplx(0.0, sim.base_phase(s_new) + st.theta));
        stepper.step(st.w, &nl, rot * phi(-cfg.L, edge), rot * phi(cfg.L, edge));
        ++st.steps;
        st.s = s_new;
        const double m = sup_abs(st.w.data(), g.N, cfg.exec);
        if (!std::isfinite(m) || m > 1e6)
            throw NumericalFailure("scheme blow-up at s = " + std::to_string(st.s) + " (sup|w| = " + std::to_string(m) + ")");
        modulate(sim, st);
        st.theta_hist.push_back(st.theta);
        if (st.theta_hist.size() > 11) st.theta_hist.erase(st.theta_hist.begin());
        const size_t back = st.theta_hist.size() - 1;
        st.theta_prime = back ? (st.theta_hist.back() - st.theta_hist.front()) / (back * cfg.ds) : 0.0;
        r = diagnose(sim, st);
        check_exit(r);
        record(r, out.exited || st.steps == total);
    }
    out.last = r;
    out.phi = exit_map(sim, r);
    out.modulation_flag = st.modulation_flag;
    return out;
}

}  // namespace cgl
