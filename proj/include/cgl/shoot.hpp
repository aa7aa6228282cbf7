#pragma once
// Two-parameter shooting on the exit map
//     Phi(d0, d1) = (s*^{7/4} Qt0(s*) / A, s*^{3/2} qt1(s*) / A)
// where s* is the first time the run leaves the shrinking set.  A coarse grid over
// [-w, w]^2 locates a cell whose corners show all four sign quadrants of Phi; the
// cell is then halved around its centre until a run survives the whole window.
#include "cgl/simulator.hpp"

#include <array>
#include <string>
#include <vector>

namespace cgl {

struct ShootConfig {
    int grid = 8;             // points per axis of the coarse grid
    double half_width = 2;
    int max_levels = 20;      // bisection depth
    double min_cell = 1e-6;   // stop once the cell is this small
    int workers = 0;          // concurrent probes; 0: CGLAB_WORKERS or the OpenMP default
};

struct Probe {
    std::string stage;  // grid, refine, bisect
    double d0 = 0, d1 = 0;
    bool exited = false;
    double exit_s = 0;  // s_end when the run stays inside
    std::string component;
    ExitMap phi;
};

struct ShootResult {
    double d0 = 0, d1 = 0;  // best pair (largest exit time)
    double exit_s = 0;
    bool trapped = false;   // the best run never left the set
    bool cell_found = false;
    bool refined = false;   // the coarse grid needed its one refinement
    int levels = 0;
    std::array<int, 4> corner_quadrant{};  // quadrant index 0..3 of Phi at (-w,-w), (w,-w), (-w,w), (w,w)
    bool corners_cover_quadrants = false;
    double corner_max_exit_s = 0;
    std::vector<Probe> probes;
};

// quadrant of (x, y): 0 for (+,+), 1 for (-,+), 2 for (-,-), 3 for (+,-); zero counts as +
int quadrant(double x, double y);

int resolve_workers(int requested);

// Runs every pair in `pts` (possibly concurrently) and returns the probes in order.
std::vector<Probe> run_probes(const Simulator& sim, const std::vector<std::array<double, 2>>& pts, const std::string& stage,
                              int workers);

ShootResult shoot(const Simulator& sim, const ShootConfig& cfg = {});

}  // namespace cgl
