#include <benchmark/benchmark.h>

#include <random>

#include "netcomp/channels.hpp"

namespace {

netcomp::Channel random_channel(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<std::vector<double>> rows(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (auto& row : rows) {
    double s = 0;
    for (auto& v : row) {
      v = u(gen);
      s += v;
    }
    for (auto& v : row) v /= s;
  }
  return netcomp::channel_from_matrix(rows);
}

}  // namespace

static void BM_BlahutArimotoCapacity(benchmark::State& state) {
  auto ch = random_channel(int(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(netcomp::capacity(ch));
}
BENCHMARK(BM_BlahutArimotoCapacity)->Arg(4)->Arg(8)->Arg(16);

static void BM_SdpiLowerEstimate(benchmark::State& state) {
  auto ch = netcomp::bsc(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(netcomp::sdpi_lower_estimate(ch, 1e-2));
}
BENCHMARK(BM_SdpiLowerEstimate);

BENCHMARK_MAIN();
