#include "ratiokit/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratiokit/error.hpp"

namespace ratiokit {

std::string to_string(EnsembleFamily family) {
  switch (family) {
    case EnsembleFamily::Hermite: return "hermite";
    case EnsembleFamily::Laguerre: return "laguerre";
    case EnsembleFamily::PoissonFamily: return "poisson";
  }
  return "unknown";
}

EnsembleFamily parse_family(const std::string& name) {
  if (name == "hermite" || name == "gaussian") return EnsembleFamily::Hermite;
  if (name == "laguerre" || name == "wishart") return EnsembleFamily::Laguerre;
  if (name == "poisson") return EnsembleFamily::PoissonFamily;
  throw ParameterError("unknown ensemble family '" + name + "'");
}

void EnsembleSpec::validate() const {
  if (n < 1) throw ParameterError("ensemble size n must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be >= 0");
}

std::string EnsembleSpec::describe() const {
  std::ostringstream os;
  os << to_string(family) << "(n=" << n;
  switch (family) {
    case EnsembleFamily::Hermite: os << ",beta=" << beta; break;
    case EnsembleFamily::Laguerre: os << ",beta=" << beta << ",alpha=" << alpha; break;
    case EnsembleFamily::PoissonFamily: os << ",nu=" << nu; break;
  }
  os << ")";
  return os.str();
}

TridiagonalMatrix sample_hermite_tridiagonal(const EnsembleSpec& spec, Engine& engine) {
  spec.validate();
  if (spec.family != EnsembleFamily::Hermite)
    throw ParameterError("sample_hermite_tridiagonal: family must be Hermite");
  const std::size_t n = spec.n;
  TridiagonalMatrix m;
  m.diag.resize(n);
  m.offdiag.resize(n - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) m.diag[i] = engine.normal();
  // offdiag[i] sits k = n-1-i rows from the bottom.
  for (std::size_t i = 0; i + 1 < n; ++i)
    m.offdiag[i] = engine.chi(spec.beta * static_cast<double>(n - 1 - i)) * inv_sqrt2;
  return m;
}

TridiagonalMatrix sample_hermite_tridiagonal(const EnsembleSpec& spec, RngStream stream) {
  Engine engine(stream);
  return sample_hermite_tridiagonal(spec, engine);
}

TridiagonalMatrix sample_laguerre_tridiagonal(const EnsembleSpec& spec, Engine& engine) {
  spec.validate();
  if (spec.family != EnsembleFamily::Laguerre)
    throw ParameterError("sample_laguerre_tridiagonal: family must be Laguerre");
  const std::size_t n = spec.n;
  // Lower bidiagonal B: diagonal x_i ~ chi_{2 alpha + beta (n-1-i)},
  // sub-diagonal y_i ~ chi_{beta (n-1-i)} at (i+1, i).
  std::vector<double> x(n), y(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = engine.chi(2.0 * spec.alpha + spec.beta * static_cast<double>(n - 1 - i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    y[i] = engine.chi(spec.beta * static_cast<double>(n - 1 - i));

  // B B^T: diag_i = x_i^2 + y_{i-1}^2, offdiag_i = x_i y_i.
  TridiagonalMatrix m;
  m.diag.resize(n);
  m.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    m.diag[i] = x[i] * x[i];
    if (i > 0) m.diag[i] += y[i - 1] * y[i - 1];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) m.offdiag[i] = x[i] * y[i];
  return m;
}

TridiagonalMatrix sample_laguerre_tridiagonal(const EnsembleSpec& spec, RngStream stream) {
  Engine engine(stream);
  return sample_laguerre_tridiagonal(spec, engine);
}

namespace {

Spectrum poisson_levels(const EnsembleSpec& spec, std::size_t count, Engine& engine) {
  // P_nu(s) is Gamma(nu + 1) rescaled to unit mean.
  const double shape = spec.nu + 1.0;
  Spectrum s;
  s.levels.resize(count);
  double level = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double spacing = spec.nu == 0.0 ? engine.exponential() : engine.gamma(shape) / shape;
    level += spacing;
    s.levels[i] = level;
  }
  return s;
}

bool has_collision(const std::vector<double>& levels) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double scale = std::max(std::abs(levels[i]), std::abs(levels[i + 1]));
    if (levels[i + 1] - levels[i] <= kDegenerateRelativeSpacing * scale) return true;
  }
  return false;
}

}  // namespace

Spectrum sample_poisson_family_levels(const EnsembleSpec& spec, std::size_t count,
                                      RngStream stream) {
  spec.validate();
  if (spec.family != EnsembleFamily::PoissonFamily)
    throw ParameterError("sample_poisson_family_levels: family must be PoissonFamily");
  if (count < 1) throw ParameterError("level count must be >= 1");
  Engine engine(stream);
  Spectrum s = poisson_levels(spec, count, engine);
  s.source = spec.describe();
  s.seed = stream.seed;
  return s;
}

Realization sample_realization(const EnsembleSpec& spec, std::uint64_t base_seed,
                               std::uint64_t index, const SamplerOptions& options) {
  spec.validate();
  Engine engine(RngStream{base_seed, index});
  Realization out;
  for (;;) {
    std::vector<double> levels;
    switch (spec.family) {
      case EnsembleFamily::Hermite:
        levels = eigenvalues_tridiagonal(sample_hermite_tridiagonal(spec, engine),
                                         options.rel_tol, options.method)
                     .eigenvalues;
        break;
      case EnsembleFamily::Laguerre:
        levels = eigenvalues_tridiagonal(sample_laguerre_tridiagonal(spec, engine),
                                         options.rel_tol, options.method)
                     .eigenvalues;
        // Rounding can push the smallest Gram eigenvalue a hair below zero.
        for (double& l : levels) l = std::max(l, 0.0);
        break;
      case EnsembleFamily::PoissonFamily:
        levels = poisson_levels(spec, spec.n, engine).levels;
        break;
    }
    if (!has_collision(levels)) {
      out.spectrum.levels = std::move(levels);
      break;
    }
    if (++out.resamples > options.max_resamples)
      throw NumericalError("realization " + std::to_string(index) +
                           ": repeated eigenvalue collisions");
  }
  out.spectrum.source = spec.describe();
  out.spectrum.seed = base_seed;
  return out;
}

std::vector<Spectrum> sample_ensemble_spectra(const EnsembleSpec& spec,
                                              std::size_t realizations,
                                              std::uint64_t base_seed,
                                              const SamplerOptions& options) {
  if (realizations < 1) throw ParameterError("realizations must be >= 1");
  std::vector<Spectrum> out;
  out.reserve(realizations);
  for (std::size_t j = 0; j < realizations; ++j) {
    try {
      out.push_back(sample_realization(spec, base_seed, j, options).spectrum);
    } catch (const NumericalError& e) {
      throw NumericalError("realization " + std::to_string(j) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ratiokit
