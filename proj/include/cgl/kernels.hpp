#pragma once
// Grid loops of the simulator, each with a serial reference and an OpenMP variant.
//
// Reductions are summed in fixed blocks of kBlock points, and the block partial sums
// are combined in block order, so both variants give bitwise-identical results for
// any thread count.
#include <complex>
#include <vector>

namespace cgl {

using cplx = std::complex<double>;

enum class Exec { serial, omp };

constexpr int kBlock = 512;

template <class F>
void parallel_for(int n, Exec ex, F&& f) {
    if (ex == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) f(i);
    } else {
        for (int i = 0; i < n; ++i) f(i);
    }
}

// rows[k] . g over [lo, hi), for every k
void moments(const std::vector<const cplx*>& rows, const cplx* g, int lo, int hi, cplx* out, Exec ex);

double sup_abs(const cplx* a, int n, Exec ex);

// out_i = c |w_i|^{p-1} w_i
void reaction(const cplx* w, cplx* out, int n, double p, cplx c, Exec ex);

// out_i = a1 u_i + a2 v_i + b1 f_i + b2 g_i   (v or g may be null when their weight is 0)
void combine(cplx* out, int n, double a1, const cplx* u, double a2, const cplx* v, double b1, const cplx* f, double b2,
             const cplx* g, Exec ex);

// Banded LU without pivoting for a matrix with two sub- and two super-diagonals.
// Diagonals are indexed by row: d[k][i] is the entry (i, i + k - 2).
class PentaLU {
public:
    PentaLU() = default;
    explicit PentaLU(std::vector<std::vector<cplx>> d);
    int size() const { return n_; }
    // in place; sequential by nature
    void solve(cplx* x) const;

private:
    int n_ = 0;
    std::vector<cplx> l1_, l2_, u0_, u1_, u2_;
};

}  // namespace cgl
