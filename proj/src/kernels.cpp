#include "cgl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cgl {

namespace {

int block_count(int n) { return (n + kBlock - 1) / kBlock; }

}  // namespace

void moments(const std::vector<const cplx*>& rows, const cplx* g, int lo, int hi, cplx* out, Exec ex) {
    const int K = static_cast<int>(rows.size());
    const int nb = block_count(hi - lo);
    std::vector<cplx> part(static_cast<size_t>(nb) * K);
    auto body = [&](int blk) {
        const int a = lo + blk * kBlock, b = std::min(hi, a + kBlock);
        for (int k = 0; k < K; ++k) {
            const cplx* r = rows[k];
            cplx s = 0;
            for (int i = a; i < b; ++i) s += r[i] * g[i];
            part[static_cast<size_t>(blk) * K + k] = s;
        }
    };
    if (ex == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (int blk = 0; blk < nb; ++blk) body(blk);
    } else {
        for (int blk = 0; blk < nb; ++blk) body(blk);
    }
    for (int k = 0; k < K; ++k) {
        cplx s = 0;
        for (int blk = 0; blk < nb; ++blk) s += part[static_cast<size_t>(blk) * K + k];
        out[k] = s;
    }
}

double sup_abs(const cplx* a, int n, Exec ex) {
    double m = 0;
    if (ex == Exec::omp) {
        // max is exact, so the reduction order does not matter
#pragma omp parallel for reduction(max : m) schedule(static)
        for (int i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    } else {
        for (int i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    }
    return m;
}

void reaction(const cplx* w, cplx* out, int n, double p, cplx c, Exec ex) {
    const double e = (p - 1) / 2;
    const bool cubic = p == 3;
    auto f = [&](int i) {
        const double m2 = std::norm(w[i]);
        out[i] = c * (cubic ? m2 : std::pow(m2, e)) * w[i];
    };
    if (ex == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) f(i);
    } else {
        for (int i = 0; i < n; ++i) f(i);
    }
}

void combine(cplx* out, int n, double a1, const cplx* u, double a2, const cplx* v, double b1, const cplx* f, double b2,
             const cplx* g, Exec ex) {
    const bool use_v = a2 != 0, use_g = b2 != 0;
    auto body = [&](int i) {
        cplx r = a1 * u[i] + b1 * f[i];
        if (use_v) r += a2 * v[i];
        if (use_g) r += b2 * g[i];
        out[i] = r;
    };
    if (ex == Exec::omp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) body(i);
    } else {
        for (int i = 0; i < n; ++i) body(i);
    }
}

PentaLU::PentaLU(std::vector<std::vector<cplx>> d) {
    if (d.size() != 5) throw std::invalid_argument("PentaLU: need five diagonals");
    n_ = static_cast<int>(d[2].size());
    for (const auto& v : d)
        if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("PentaLU: diagonal length mismatch");
    l1_.assign(n_, 0.0);
    l2_.assign(n_, 0.0);
    u0_.assign(n_, 0.0);
    u1_.assign(n_, 0.0);
    u2_.assign(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        if (i >= 2) l2_[i] = d[0][i] / u0_[i - 2];
        if (i >= 1) l1_[i] = (d[1][i] - (i >= 2 ? l2_[i] * u1_[i - 2] : 0.0)) / u0_[i - 1];
        u0_[i] = d[2][i] - (i >= 2 ? l2_[i] * u2_[i - 2] : 0.0) - (i >= 1 ? l1_[i] * u1_[i - 1] : 0.0);
        u1_[i] = d[3][i] - (i >= 1 ? l1_[i] * u2_[i - 1] : 0.0);
        u2_[i] = d[4][i];
        if (std::abs(u0_[i]) < 1e-300) throw std::runtime_error("PentaLU: zero pivot");
    }
}

void PentaLU::solve(cplx* x) const {
    for (int i = 1; i < n_; ++i) {
        x[i] -= l1_[i] * x[i - 1];
        if (i >= 2) x[i] -= l2_[i] * x[i - 2];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        cplx r = x[i];
        if (i + 1 < n_) r -= u1_[i] * x[i + 1];
        if (i + 2 < n_) r -= u2_[i] * x[i + 2];
        x[i] = r / u0_[i];
    }
}

}  // namespace cgl
