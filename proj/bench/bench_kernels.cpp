// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gauge_rabi/kernels.hpp"

namespace k = gauge_rabi::kernels;
using k::cplx;

namespace {

std::vector<cplx> random_matrix(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    std::vector<cplx> m(n * n);
    for (auto& z : m) z = {d(rng), d(rng)};
    return m;
}

std::vector<cplx> random_hermitian(std::size_t n, unsigned seed) {
    auto m = random_matrix(n, seed);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = m[i * n + i].real();
        for (std::size_t j = i + 1; j < n; ++j) m[j * n + i] = std::conj(m[i * n + j]);
    }
    return m;
}

template <auto Matmul>
void bm_matmul(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
    std::vector<cplx> c(n * n);
    for (auto _ : state) {
        Matmul(a, b, c, n);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(n * n * n));
}

template <auto Jacobi>
void bm_jacobi(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto h = random_hermitian(n, 3);
    std::vector<cplx> a(n * n), v(n * n);
    for (auto _ : state) {
        a = h;
        const auto st = Jacobi(a, v, n, 1e-14, 60);
        benchmark::DoNotOptimize(st.off_norm);
    }
}

}  // namespace

BENCHMARK(bm_matmul<k::serial::matmul>)->Name("matmul/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(bm_matmul<k::omp::matmul>)->Name("matmul/omp")->RangeMultiplier(2)->Range(64, 512)->UseRealTime();
BENCHMARK(bm_jacobi<k::serial::jacobi_cyclic>)->Name("jacobi/serial")->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_jacobi<k::omp::jacobi_round_robin>)->Name("jacobi/omp")->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
