#include "cgl/shoot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgl {

int quadrant(double x, double y) {
    const bool px = x >= 0, py = y >= 0;
    if (px && py) return 0;
    if (!px && py) return 1;
    if (!px && !py) return 2;
    return 3;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CGLAB_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<Probe> run_probes(const Simulator& sim, const std::vector<std::array<double, 2>>& pts, const std::string& stage,
                              int workers) {
    const int n = static_cast<int>(pts.size());
    std::vector<Probe> out(n);
    std::vector<std::exception_ptr> err(n);
    auto one = [&](int k) {
        try {
            InitialDataSpec spec;
            spec.d0_tilde = pts[k][0];
            spec.d1_tilde = pts[k][1];
            RunOptions opt;
            opt.record_every = 0;
            const RunResult r = run(sim, spec, opt);
            Probe& p = out[k];
            p.stage = stage;
            p.d0 = pts[k][0];
            p.d1 = pts[k][1];
            p.exited = r.exited;
            p.exit_s = r.exited ? r.exit_s : sim.config().s_end;
            p.component = r.exit_component;
            p.phi = r.phi;
        } catch (...) {
            err[k] = std::current_exception();
        }
    };
    const int w = resolve_workers(workers);
    if (w > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(w)
        for (int k = 0; k < n; ++k) one(k);
    } else {
        for (int k = 0; k < n; ++k) one(k);
    }
    for (const auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

namespace {

struct Cell {
    double lo0, hi0, lo1, hi1;
    int orient0 = 1, orient1 = 1;  // sign of dPhi_k / dd_k across the cell
    double score = 0;
};

std::vector<double> axis(int n, double w) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = -w + 2 * w * i / (n - 1);
    return v;
}

// cells of an n x n probe grid (row-major in d1, d0) whose corners show all four quadrants
std::vector<Cell> sign_cells(const std::vector<Probe>& g, const std::vector<double>& ax) {
    const int n = static_cast<int>(ax.size());
    auto at = [&](int i, int j) -> const Probe& { return g[static_cast<size_t>(j) * n + i]; };
    std::vector<Cell> cells;
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const Probe* c[4] = {&at(i, j), &at(i + 1, j), &at(i, j + 1), &at(i + 1, j + 1)};
            std::set<int> q;
            for (const Probe* p : c) q.insert(quadrant(p->phi.phi0, p->phi.phi1));
            if (q.size() < 4) continue;
            Cell cell{ax[i], ax[i + 1], ax[j], ax[j + 1]};
            const double d0 = c[1]->phi.phi0 + c[3]->phi.phi0 - c[0]->phi.phi0 - c[2]->phi.phi0;
            const double d1 = c[2]->phi.phi1 + c[3]->phi.phi1 - c[0]->phi.phi1 - c[1]->phi.phi1;
            cell.orient0 = d0 < 0 ? -1 : 1;
            cell.orient1 = d1 < 0 ? -1 : 1;
            cell.score = std::min({c[0]->exit_s, c[1]->exit_s, c[2]->exit_s, c[3]->exit_s});
            cells.push_back(cell);
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.score > b.score; });
    return cells;
}

std::vector<std::array<double, 2>> grid_points(const std::vector<double>& ax) {
    std::vector<std::array<double, 2>> pts;
    for (double d1 : ax)
        for (double d0 : ax) pts.push_back({d0, d1});
    return pts;
}

}  // namespace

ShootResult shoot(const Simulator& sim, const ShootConfig& cfg) {
    if (cfg.grid < 2) throw DomainError("shoot: grid needs at least 2 points per axis");
    if (!(cfg.half_width > 0)) throw DomainError("shoot: half_width must be positive");
    ShootResult res;
    auto keep = [&](const std::vector<Probe>& ps) {
        for (const Probe& p : ps) {
            if (res.probes.empty() || p.exit_s > res.exit_s) {
                res.d0 = p.d0;
                res.d1 = p.d1;
                res.exit_s = p.exit_s;
                res.trapped = !p.exited;
            }
            res.probes.push_back(p);
        }
    };

    std::vector<double> ax = axis(cfg.grid, cfg.half_width);
    std::vector<Probe> coarse = run_probes(sim, grid_points(ax), "grid", cfg.workers);
    keep(coarse);

    const int n = cfg.grid;
    const Probe* corner[4] = {&coarse[0], &coarse[n - 1], &coarse[static_cast<size_t>(n - 1) * n],
                              &coarse[static_cast<size_t>(n) * n - 1]};
    std::set<int> seen;
    for (int k = 0; k < 4; ++k) {
        res.corner_quadrant[k] = quadrant(corner[k]->phi.phi0, corner[k]->phi.phi1);
        seen.insert(res.corner_quadrant[k]);
        res.corner_max_exit_s = std::max(res.corner_max_exit_s, corner[k]->exit_s);
    }
    res.corners_cover_quadrants = seen.size() == 4;

    std::vector<Cell> cells = sign_cells(coarse, ax);
    if (cells.empty()) {
        // one refinement: halve the spacing, reusing nothing (runs are cheap next to the bookkeeping)
        res.refined = true;
        ax = axis(2 * cfg.grid - 1, cfg.half_width);
        std::vector<Probe> fine = run_probes(sim, grid_points(ax), "refine", cfg.workers);
        keep(fine);
        cells = sign_cells(fine, ax);
    }
    if (cells.empty() || res.trapped) {
        res.cell_found = !cells.empty();
        return res;
    }
    res.cell_found = true;

    Cell c = cells.front();
    for (int level = 0; level < cfg.max_levels; ++level) {
        if (std::max(c.hi0 - c.lo0, c.hi1 - c.lo1) < cfg.min_cell) break;
        const double m0 = 0.5 * (c.lo0 + c.hi0), m1 = 0.5 * (c.lo1 + c.hi1);
        const std::vector<Probe> p = run_probes(sim, {{m0, m1}}, "bisect", 1);
        keep(p);
        res.levels = level + 1;
        if (!p[0].exited) break;
        const ExitMap& f = p[0].phi;
        if (f.phi0 * c.orient0 > 0)
            c.hi0 = m0;
        else
            c.lo0 = m0;
        if (std::abs(f.phi1) < 1e-10) {
            c.lo1 = c.hi1 = m1;
        } else if (f.phi1 * c.orient1 > 0) {
            c.hi1 = m1;
        } else {
            c.lo1 = m1;
        }
    }
    return res;
}

}  // namespace cgl
