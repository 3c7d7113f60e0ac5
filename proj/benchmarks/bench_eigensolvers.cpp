#include <benchmark/benchmark.h>

#include <ratiokit/ensemble.hpp>
#include <ratiokit/tridiag_eigen.hpp>

using namespace ratiokit;

namespace {

TridiagonalMatrix hermite_matrix(std::size_t n) {
  return sample_hermite_tridiagonal(EnsembleSpec{EnsembleFamily::Hermite, n, 1.0, 1.0, 0.0},
                                    RngStream{11, 0});
}

void BM_Bisection(benchmark::State& state) {
  const auto m = hermite_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(eigenvalues_tridiagonal(m, kDefaultEigenRelTol, EigenMethod::Bisection));
  state.SetComplexityN(state.range(0));
}

void BM_ImplicitQL(benchmark::State& state) {
  const auto m = hermite_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(eigenvalues_tridiagonal(m, kDefaultEigenRelTol, EigenMethod::ImplicitQL));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_Bisection)->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK(BM_ImplicitQL)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

BENCHMARK_MAIN();
