#include <benchmark/benchmark.h>

#include <ratiokit/ensemble.hpp>
#include <ratiokit/model_spectra.hpp>
#include <ratiokit/pipeline.hpp>

using namespace ratiokit;

namespace {

void BM_HermiteRealization(benchmark::State& state) {
  const EnsembleSpec spec{EnsembleFamily::Hermite, static_cast<std::size_t>(state.range(0)), 2.0, 1.0, 0.0};
  std::uint64_t index = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_realization(spec, 5, index++, SamplerOptions{EigenMethod::ImplicitQL}));
}

void BM_EnsembleStatistics(benchmark::State& state) {
  const EnsembleSpec spec{EnsembleFamily::Hermite, 3, 1.0, 1.0, 0.0};
  const StatRequest req{};
  for (auto _ : state)
    benchmark::DoNotOptimize(ensemble_statistics(spec, static_cast<std::size_t>(state.range(0)), 9, req, 1,
                                                 SamplerOptions{EigenMethod::ImplicitQL}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IsingSector(benchmark::State& state) {
  const IsingSpec spec{static_cast<std::size_t>(state.range(0)), 1.0, 0.01, 4};
  for (auto _ : state) benchmark::DoNotOptimize(ising_sector_spectrum(spec));
}

}  // namespace

BENCHMARK(BM_HermiteRealization)->Arg(3)->Arg(100)->Arg(1000);
BENCHMARK(BM_EnsembleStatistics)->Arg(100000);
BENCHMARK(BM_IsingSector)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
