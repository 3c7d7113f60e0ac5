#include <benchmark/benchmark.h>

#include <ratiokit/exact_moments.hpp>

using namespace ratiokit;

namespace {

void BM_LaguerreMeanRatio(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laguerre_mean_ratio_exact(n, 1));
}

void BM_ConeIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(laguerre_cone_integral({3, 2, 1}, 15, 5));
}

}  // namespace

BENCHMARK(BM_LaguerreMeanRatio)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConeIntegral);

BENCHMARK_MAIN();
