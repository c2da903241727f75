// Serial reference against the OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "wittkit/graded.hpp"
#include "wittkit/random.hpp"
#include "wittkit/series.hpp"

#include <benchmark/benchmark.h>

using namespace wittkit;

namespace {

std::vector<Scalar> coeffs(std::size_t n, std::uint64_t seed) {
    gen::Rng rng(seed);
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(gen::rational(rng, 1000, 97));
    return v;
}

template <auto Kernel>
void BM_cauchy(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = coeffs(n, 1), b = coeffs(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, n));
    state.SetComplexityN(state.range(0));
}

GradedElement dense_alpha() {
    GradedElement x;
    for (long g = -3; g <= 3; ++g) x = x + GradedElement::basis(g, make_scalar(g + 5, 3));
    return x;
}

template <bool Parallel>
void BM_ad_matrix(benchmark::State& state) {
    const long h = state.range(0);
    const auto alpha = dense_alpha();
    const auto z = Pseudomonoid::integers();
    const Window w(-h, h);
    for (auto _ : state) {
        if constexpr (Parallel)
            benchmark::DoNotOptimize(ad_matrix(alpha, z, w));
        else
            benchmark::DoNotOptimize(serial::ad_matrix(alpha, z, w));
    }
}

}  // namespace

BENCHMARK(BM_cauchy<kernels::cauchy_product_serial>)->Name("cauchy/serial")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_cauchy<kernels::cauchy_product_omp>)->Name("cauchy/omp")->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_ad_matrix<false>)->Name("ad_matrix/serial")->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_ad_matrix<true>)->Name("ad_matrix/omp")->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
