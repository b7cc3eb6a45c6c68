#include <benchmark/benchmark.h>

#include "netcomp/concentration.hpp"

static void BM_CsbpEnumeration(benchmark::State& state) {
  const int k = int(state.range(0));
  std::vector<netcomp::ObservationModel> models(static_cast<size_t>(k), netcomp::rademacher());
  std::vector<double> a(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) a[size_t(i)] = 1.0 + 0.01 * i;
  auto f = netcomp::linear_function(a);
  netcomp::Distortion dist{netcomp::Distortion::Kind::Absolute, std::nullopt};
  for (auto _ : state)
    benchmark::DoNotOptimize(netcomp::expected_csbp(models, f, dist, {}, 1.0).value);
}
BENCHMARK(BM_CsbpEnumeration)->Arg(8)->Arg(12)->Arg(16);

static void BM_CsbpMonteCarlo(benchmark::State& state) {
  std::vector<netcomp::ObservationModel> models(4, netcomp::uniform_interval(0.0, 1.0));
  auto f = netcomp::linear_function({1, 1, 1, 1});
  netcomp::Distortion dist{netcomp::Distortion::Kind::Absolute, std::nullopt};
  netcomp::CsbpOptions opts;
  opts.samples = uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(netcomp::expected_csbp(models, f, dist, {}, 0.1, opts).value);
}
BENCHMARK(BM_CsbpMonteCarlo)->Arg(100000);

BENCHMARK_MAIN();
