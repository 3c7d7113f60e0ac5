#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ratiokit/rng.hpp"
#include "ratiokit/spectrum.hpp"
#include "ratiokit/tridiag_eigen.hpp"

namespace ratiokit {

enum class EnsembleFamily { Hermite, Laguerre, PoissonFamily };

std::string to_string(EnsembleFamily family);
EnsembleFamily parse_family(const std::string& name);

struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::Hermite;
  std::size_t n = 3;
  double beta = 1.0;
  double alpha = 1.0;
  double nu = 0.0;

  /// Throws ParameterError on n < 1, beta <= 0, alpha <= 0 or nu < 0.
  void validate() const;
  std::string describe() const;
};

/// Dumitriu-Edelman beta-Hermite model: diagonal N(0,1), sub-diagonal k
/// (counted from the bottom, k = 1..n-1) distributed as chi_{beta k}/sqrt(2).
/// Eigenvalue law is proportional to exp(-sum l^2 / 2) |Vandermonde|^beta.
TridiagonalMatrix sample_hermite_tridiagonal(const EnsembleSpec& spec,
                                             RngStream stream);
TridiagonalMatrix sample_hermite_tridiagonal(const EnsembleSpec& spec,
                                             Engine& engine);

/// B B^T for the Dumitriu-Edelman bidiagonal B with diagonal
/// chi_{2 alpha + beta (k-1)} and sub-diagonal chi_{beta k} (k counted from
/// the bottom). Eigenvalue law is proportional to
/// prod l^(alpha-1) exp(-l/2) |Vandermonde|^beta on l >= 0.
TridiagonalMatrix sample_laguerre_tridiagonal(const EnsembleSpec& spec,
                                              RngStream stream);
TridiagonalMatrix sample_laguerre_tridiagonal(const EnsembleSpec& spec,
                                              Engine& engine);

/// Cumulative sums of `count` i.i.d. spacings from P_nu(s), the Gamma law
/// with shape nu+1 and unit mean. nu = 0 is a unit-rate Poisson process,
/// nu = 1 is semi-Poisson.
Spectrum sample_poisson_family_levels(const EnsembleSpec& spec,
                                      std::size_t count, RngStream stream);

/// Relative spacing below which two sampled levels count as collided.
inline constexpr double kDegenerateRelativeSpacing = 1e-13;

struct SamplerOptions {
  EigenMethod method = EigenMethod::ImplicitQL;
  double rel_tol = kDefaultEigenRelTol;
  /// Resampling attempts before a realization is declared a failure.
  std::size_t max_resamples = 64;
};

struct Realization {
  Spectrum spectrum;
  std::size_t resamples = 0;
};

/// One realization drawn from RngStream(base_seed, index). For the
/// Poisson family, spec.n levels are generated.
Realization sample_realization(const EnsembleSpec& spec,
                               std::uint64_t base_seed, std::uint64_t index,
                               const SamplerOptions& options = {});

/// All realizations 0..count-1 in index order. Eigensolver failures are
/// rethrown as NumericalError naming the realization index.
std::vector<Spectrum> sample_ensemble_spectra(const EnsembleSpec& spec,
                                              std::size_t realizations,
                                              std::uint64_t base_seed,
                                              const SamplerOptions& options = {});

}  // namespace ratiokit
