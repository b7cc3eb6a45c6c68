#include <benchmark/benchmark.h>

#include "netcomp/mi_bounds.hpp"

static void BM_ChainClosedForm(benchmark::State& state) {
  const int n = int(state.range(0));
  const int64_t t = state.range(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(netcomp::chain_mi_closed(n, t, 0.3, 1.0, 0.5).value);
}
BENCHMARK(BM_ChainClosedForm)->Args({8, 100})->Args({8, 10000})->Args({16, 100000});

static void BM_ChainRecursionDp(benchmark::State& state) {
  const int n = int(state.range(0));
  const int64_t t = state.range(1);
  std::vector<double> etas(size_t(n - 1), 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(netcomp::chain_mi_recursion_dp(n, t, etas, 1.0, 0.5));
}
BENCHMARK(BM_ChainRecursionDp)->Args({8, 100})->Args({8, 10000});

static void BM_ChainInversion(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(netcomp::invert_chain_closed(int(state.range(0)), 0.05, 1.0, 0.2, 0.9));
}
BENCHMARK(BM_ChainInversion)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
