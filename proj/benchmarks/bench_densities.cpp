#include <benchmark/benchmark.h>

#include <ratiokit/analytic_densities.hpp>
#include <ratiokit/joint_density.hpp>

using namespace ratiokit;

namespace {

void BM_OverlapClosedForm(benchmark::State& state) {
  const int beta = static_cast<int>(state.range(0));
  double r = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_overlap_k1(beta, r, OverlapMode::ClosedForm));
    r = r < 10.0 ? r * 1.01 : 0.37;
  }
}

void BM_OverlapIntegral(benchmark::State& state) {
  const int beta = static_cast<int>(state.range(0));
  double r = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_overlap_k1(beta, r, OverlapMode::Integral));
    r = r < 10.0 ? r * 1.01 : 0.37;
  }
}

void BM_Marginal(benchmark::State& state) {
  const auto p = make_joint_params(EnsembleFamily::Hermite, static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(marginal_ratio_density(p, 0.8));
}

}  // namespace

BENCHMARK(BM_OverlapClosedForm)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_OverlapIntegral)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_Marginal)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
