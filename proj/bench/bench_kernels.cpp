// Serial reference kernels against the OpenMP versions.

#include <random>

#include <benchmark/benchmark.h>

#include "moser/kernels.hpp"
#include "test_util.hpp"

using namespace moser;

namespace {

PQSeries dense(int N, int min_deg, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return testing::random_series(rng, N, min_deg, N, 0.8);
}

template <class Fn> void product(benchmark::State &st, Fn fn)
{
    const int N = static_cast<int>(st.range(0));
    const PQSeries a = dense(N, 1, 1), b = dense(N, 1, 2);
    for (auto _ : st) benchmark::DoNotOptimize(fn(a, b, N));
}

template <class Fn> void bracket(benchmark::State &st, Fn fn)
{
    const int N = static_cast<int>(st.range(0));
    const PQSeries G = dense(N, 1, 3), chi = dense(N, 3, 4);
    for (auto _ : st) benchmark::DoNotOptimize(fn(G, chi));
}

template <class Fn> void sups(benchmark::State &st, Fn fn)
{
    const int N = static_cast<int>(st.range(0));
    const PQSeries G = dense(N, 0, 5);
    for (auto _ : st) benchmark::DoNotOptimize(fn(G, 0.0, SupMode::tight));
}

void BM_product_serial(benchmark::State &st) { product(st, kernels::serial::product); }
void BM_product_omp(benchmark::State &st) { product(st, kernels::product); }
void BM_bracket_serial(benchmark::State &st) { bracket(st, kernels::serial::bracket); }
void BM_bracket_omp(benchmark::State &st) { bracket(st, kernels::bracket); }
void BM_sups_serial(benchmark::State &st) { sups(st, kernels::serial::coefficient_sups); }
void BM_sups_omp(benchmark::State &st) { sups(st, kernels::coefficient_sups); }

} // namespace

BENCHMARK(BM_product_serial)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_product_omp)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_bracket_serial)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_bracket_omp)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sups_serial)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sups_omp)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
