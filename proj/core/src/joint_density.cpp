#include "ratiokit/joint_density.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ratiokit/error.hpp"
#include "ratiokit/parallel.hpp"

namespace ratiokit {
namespace {

double hermite_q(std::size_t n, double beta) {
  const double N = static_cast<double>(n);
  return (N - 1.0) * (2.0 + beta * N) / 4.0;
}

double laguerre_s(std::size_t n, double beta) {
  const double N = static_cast<double>(n);
  return N + beta * N * (N - 1.0) / 2.0;
}

// Polynomial (Vandermonde-type) part shared by both families, in log form.
// Returns -inf when f is not strictly ascending and positive.
double log_vandermonde_part(double beta, std::span<const double> f) {
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(f[j] > prev) || !std::isfinite(f[j])) return -std::numeric_limits<double>::infinity();
    prev = f[j];
    acc += std::log(f[j]) + std::log1p(f[j]);
    for (std::size_t k = j + 1; k < f.size(); ++k) acc += std::log(f[k] - f[j]);
  }
  return beta * acc;
}

double log_density_unchecked(const JointDensityParams& p, std::span<const double> f) {
  const double v = log_vandermonde_part(p.beta, f);
  if (!std::isfinite(v)) return v;
  double sum = 0.0, sum_sq = 0.0;
  for (double x : f) {
    sum += x;
    sum_sq += x * x;
  }
  const double N = static_cast<double>(p.n);
  if (p.family == EnsembleFamily::Hermite) {
    const double d = N + N * sum_sq - sum * sum + 2.0 * sum - 1.0;
    return p.log_norm + v - p.q_exponent * std::log(d);
  }
  return p.log_norm + v + (1.0 - p.s_exponent) * std::log(N - 1.0 + sum);
}

quad::Options quad_options(const MarginalOptions& opt) {
  quad::Options q;
  q.abs_tol = opt.abs_tol;
  q.rel_tol = opt.rel_tol;
  return q;
}

std::vector<double> geometric_breaks(double x) {
  std::vector<double> breaks;
  for (double b = 1e-2; b < x; b *= 10.0) breaks.push_back(b);
  return breaks;
}

}  // namespace

double log_hermite_partition(std::size_t n, double beta) {
  const double N = static_cast<double>(n);
  double acc = 0.5 * N * std::log(2.0 * std::numbers::pi) - std::lgamma(N + 1.0);
  const double g = std::lgamma(1.0 + 0.5 * beta);
  for (std::size_t j = 1; j <= n; ++j) acc += std::lgamma(1.0 + 0.5 * beta * static_cast<double>(j)) - g;
  return acc;
}

double log_laguerre_partition(std::size_t n, double alpha, double beta) {
  const double N = static_cast<double>(n);
  double acc = (alpha * N + 0.5 * beta * N * (N - 1.0)) * std::numbers::ln2 - std::lgamma(N + 1.0);
  const double g = std::lgamma(1.0 + 0.5 * beta);
  for (std::size_t j = 1; j <= n; ++j) {
    const double J = static_cast<double>(j);
    acc += std::lgamma(alpha + (J - 1.0) * 0.5 * beta) + std::lgamma(1.0 + J * 0.5 * beta) - g;
  }
  return acc;
}

void JointDensityParams::validate() const {
  if (n < 3) throw ParameterError("joint density needs n >= 3");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  switch (family) {
    case EnsembleFamily::Hermite:
      if (q_exponent != hermite_q(n, beta))
        throw ParameterError("q_exponent does not match (n, beta)");
      break;
    case EnsembleFamily::Laguerre:
      if (alpha != 1.0) throw UnsupportedError("Laguerre joint density is implemented for alpha = 1 only");
      if (s_exponent != laguerre_s(n, beta))
        throw ParameterError("s_exponent does not match (n, beta)");
      break;
    default:
      throw ParameterError("joint density is defined for the Hermite and Laguerre families only");
  }
  if (!std::isfinite(log_norm)) throw NumericalError("joint density normalization is not finite");
}

JointDensityParams make_joint_params(EnsembleFamily family, std::size_t n, double beta, double alpha) {
  JointDensityParams p;
  p.family = family;
  p.n = n;
  p.beta = beta;
  p.alpha = alpha;
  if (n < 3) throw ParameterError("joint density needs n >= 3");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be finite and > 0");
  const double N = static_cast<double>(n);
  if (family == EnsembleFamily::Hermite) {
    p.q_exponent = hermite_q(n, beta);
    p.log_norm = -log_hermite_partition(n, beta) + 0.5 * std::log(std::numbers::pi / N) +
                 (-1.0 + N * (2.0 + beta * (N - 1.0)) / 4.0) * std::numbers::ln2 +
                 std::lgamma(p.q_exponent) + p.q_exponent * std::log(N);
  } else if (family == EnsembleFamily::Laguerre) {
    if (alpha != 1.0) throw UnsupportedError("Laguerre joint density is implemented for alpha = 1 only");
    p.s_exponent = laguerre_s(n, beta);
    p.log_norm = -log_laguerre_partition(n, alpha, beta) + std::lgamma(p.s_exponent - 1.0) +
                 p.s_exponent * std::numbers::ln2 - std::log(N);
  } else {
    throw ParameterError("joint density is defined for the Hermite and Laguerre families only");
  }
  p.validate();
  return p;
}

double log_joint_rds_density(const JointDensityParams& p, std::span<const double> f) {
  if (f.size() + 2 != p.n)
    throw DomainError("RDS vector has length " + std::to_string(f.size()) + ", expected " +
                      std::to_string(p.n - 2));
  const double v = log_density_unchecked(p, f);
  if (std::isinf(v) && v < 0.0) throw DomainError("RDS vector must be strictly ascending and positive");
  return v;
}

double joint_rds_density(const JointDensityParams& p, std::span<const double> f) {
  return std::exp(log_joint_rds_density(p, f));
}

double rds_identity_factor(const RdsVector& f) {
  double k = 1.0;
  for (std::size_t j = 0; j + 1 < f.f.size(); ++j) k *= f.f[j] - (j == 0 ? 0.0 : f.f[j - 1]);
  return k;
}

double joint_ratio_density(const JointDensityParams& p, std::span<const double> r) {
  if (r.size() + 2 != p.n) throw DomainError("ratio vector has the wrong length");
  for (double x : r)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ratios must be finite and > 0");
  const RdsVector f = rds_from_ratios(r);
  return rds_identity_factor(f) * joint_rds_density(p, f.f);
}

// --- marginals ----------------------------------------------------------------

double marginal_slice(const JointDensityParams& p, std::size_t slice, double r,
                      const MarginalOptions& opt) {
  p.validate();
  if (p.n > kMaxMarginalSize)
    throw UnsupportedError("marginal densities are implemented for n <= " +
                           std::to_string(kMaxMarginalSize));
  const std::size_t m = p.n - 2;
  if (slice < 1 || slice > m) throw ParameterError("slice index out of range");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("marginal density needs finite r > 0");

  const std::size_t fixed = slice - 1;
  const auto qopt = quad_options(opt);
  std::vector<double> f(m, 0.0);

  std::function<double(std::size_t)> level = [&](std::size_t k) -> double {
    if (k == m) {
      const double v = log_density_unchecked(p, f);
      return std::isfinite(v) ? std::exp(v) : 0.0;
    }
    const double fm1 = k >= 1 ? f[k - 1] : 0.0;
    const double fm2 = k >= 2 ? f[k - 2] : (k == 1 ? 0.0 : -1.0);
    if (k == fixed) {
      f[k] = (1.0 + r) * fm1 - r * fm2;
      return (fm1 - fm2) * level(k + 1);
    }
    const double lo = fm1;
    const auto res = quad::integrate_semi_infinite(
        [&](double x) {
          f[k] = x;
          return level(k + 1);
        },
        lo, 1.0 + lo, qopt);
    if (!res.converged)
      throw NumericalError("marginal slice " + std::to_string(slice) + " did not converge at r = " +
                           std::to_string(r));
    return res.value;
  };
  return level(0);
}

double marginal_ratio_density(const JointDensityParams& p, double r, const MarginalOptions& opt) {
  p.validate();
  if (p.n > kMaxMarginalSize)
    throw UnsupportedError("marginal densities are implemented for n <= " +
                           std::to_string(kMaxMarginalSize));
  const std::size_t m = p.n - 2;
  double acc = 0.0;
  for (std::size_t j = 1; j <= m; ++j) acc += marginal_slice(p, j, r, opt);
  return acc / static_cast<double>(m);
}

// --- maximal ratio ------------------------------------------------------------

MaxRatioEstimate max_ratio_distribution(const JointDensityParams& p, double x,
                                        const MaxRatioOptions& opt) {
  p.validate();
  if (!(x > 0.0)) throw DomainError("max_ratio_distribution needs x > 0");
  const std::size_t m = p.n - 2;

  if (opt.method == MaxRatioMethod::Quadrature) {
    if (p.n > 4) throw UnsupportedError("quadrature for the maximal ratio supports n <= 4");
    const auto qopt = quad_options(opt.quadrature);
    std::vector<double> r(m, 0.0);
    std::function<double(std::size_t)> level = [&](std::size_t k) -> double {
      if (k == m) return joint_ratio_density(p, r);
      auto inner = [&](double v) {
        if (!(v > 0.0)) return 0.0;
        r[k] = v;
        return level(k + 1);
      };
      const auto res = std::isinf(x) ? quad::integrate_semi_infinite(inner, 0.0, 1.0, qopt)
                                     : quad::integrate(inner, 0.0, x, qopt, geometric_breaks(x));
      if (!res.converged) throw NumericalError("maximal-ratio quadrature did not converge");
      return res.value;
    };
    return {std::clamp(level(0), 0.0, 1.0), 0.0};
  }

  if (opt.realizations == 0) throw ParameterError("MonteCarlo needs at least one realization");
  EnsembleSpec spec;
  spec.family = p.family;
  spec.n = p.n;
  spec.beta = p.beta;
  spec.alpha = p.alpha;
  spec.validate();
  struct Tally {
    std::uint64_t below = 0;
  };
  const Tally t = deterministic_reduce(
      opt.realizations, 4096, default_worker_count(), [] { return Tally{}; },
      [&](Tally& acc, std::size_t i) {
        const auto real = sample_realization(spec, opt.seed, i);
        const auto ratios = consecutive_ratios(real.spectrum);
        const double mx = *std::max_element(ratios.values.begin(), ratios.values.end());
        if (mx < x) ++acc.below;
      },
      [](Tally& into, Tally&& b) { into.below += b.below; });
  const double total = static_cast<double>(opt.realizations);
  const double prob = static_cast<double>(t.below) / total;
  return {prob, std::sqrt(std::max(prob * (1.0 - prob), 0.0) / total)};
}

}  // namespace ratiokit
