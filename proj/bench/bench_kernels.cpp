// Serial reference against the OpenMP variant for the grid kernels and one
// simulator step.  Run with OMP_NUM_THREADS set to the thread count of interest.
#include "cgl/kernels.hpp"
#include "cgl/simulator.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace cgl;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::omp : Exec::serial; }

std::vector<cplx> field(int n) {
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(std::cos(0.01 * i), std::sin(0.013 * i));
    return v;
}

void BM_reaction(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto w = field(n);
    std::vector<cplx> out(n);
    for (auto _ : st) {
        reaction(w.data(), out.data(), n, 3.0, cplx(1, 1), exec_of(st));
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_combine(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto u = field(n), v = field(n), f = field(n), g = field(n);
    std::vector<cplx> out(n);
    for (auto _ : st) {
        combine(out.data(), n, 4.0 / 3, u.data(), -1.0 / 3, v.data(), 1.0, f.data(), -0.5, g.data(), exec_of(st));
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_moments(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<std::vector<cplx>> store(14, field(n));
    std::vector<const cplx*> rows;
    for (auto& r : store) rows.push_back(r.data());
    const auto g = field(n);
    std::vector<cplx> out(rows.size());
    for (auto _ : st) {
        moments(rows, g.data(), 0, n, out.data(), exec_of(st));
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n * static_cast<int64_t>(rows.size()));
}

void BM_sup_abs(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto w = field(n);
    for (auto _ : st) benchmark::DoNotOptimize(sup_abs(w.data(), n, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_stepper(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const UniformGrid g{90, n};
    ImexStepper stepper(g, cplx(1, 0.5), cplx(-0.5, -0.5), 5e-4, Scheme::imex2, 4, exec_of(st));
    auto w = field(n);
    const auto nl = field(n);
    for (auto _ : st) {
        stepper.step(w, &nl, w.front(), w.back());
        benchmark::DoNotOptimize(w.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {4608, 9216, 36864})
        for (int omp : {0, 1}) b->Args({n, omp});
    b->ArgNames({"N", "omp"});
}

}  // namespace

BENCHMARK(BM_reaction)->Apply(sizes);
BENCHMARK(BM_combine)->Apply(sizes);
BENCHMARK(BM_moments)->Apply(sizes);
BENCHMARK(BM_sup_abs)->Apply(sizes);
BENCHMARK(BM_stepper)->Apply(sizes);

BENCHMARK_MAIN();
