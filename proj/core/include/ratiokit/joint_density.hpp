#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ratiokit/ensemble.hpp"
#include "ratiokit/quadrature.hpp"
#include "ratiokit/ratio_statistics.hpp"

namespace ratiokit {

/// Parameters of the exact joint density of the relative disjoint spacings
/// f_1 < ... < f_{n-2} for the beta-Hermite or beta-Laguerre (alpha = 1)
/// ensemble. `log_norm` holds the log of every f-independent factor.
struct JointDensityParams {
  EnsembleFamily family = EnsembleFamily::Hermite;
  std::size_t n = 3;
  double beta = 1.0;
  double alpha = 1.0;
  double q_exponent = 0.0;  // Hermite: (n-1)(2 + beta n)/4
  double s_exponent = 0.0;  // Laguerre: n + beta n (n-1)/2
  double log_norm = 0.0;

  /// Throws ParameterError if the stored exponents do not match the ones
  /// recomputed from (n, beta), or the parameters are out of range.
  void validate() const;
};

/// Builds and validates the parameters. Laguerre requires alpha == 1;
/// PoissonFamily is rejected.
JointDensityParams make_joint_params(EnsembleFamily family, std::size_t n,
                                     double beta, double alpha = 1.0);

/// log of the n-point ordered-eigenvalue normalization constant.
double log_hermite_partition(std::size_t n, double beta);
double log_laguerre_partition(std::size_t n, double alpha, double beta);

/// Joint RDS density (f strictly ascending and positive, length n-2).
/// Evaluated in log space. Throws DomainError on bad input.
double joint_rds_density(const JointDensityParams& p, std::span<const double> f);
double log_joint_rds_density(const JointDensityParams& p, std::span<const double> f);

/// Joint density of the consecutive ratios r_1..r_{n-2} obtained by the
/// change of variables f(r), i.e. K(f) * joint_rds_density(f).
double joint_ratio_density(const JointDensityParams& p, std::span<const double> r);

/// K(f) = prod_{j=0}^{n-4} (f_{j+1} - f_j) with f_0 = 0, which equals
/// prod_j r_j^{n-2-j} and the inverse Jacobian |dr/df|.
double rds_identity_factor(const RdsVector& f);

struct MarginalOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
};

inline constexpr std::size_t kMaxMarginalSize = 5;

/// One-point density of r: average over j of the slice where r_j = r,
/// with f_j = (1 + r) f_{j-1} - r f_{j-2} (f_0 = 0, f_{-1} = -1) and
/// weight f_{j-1} - f_{j-2}. Supports n in {3, 4, 5}; throws
/// UnsupportedError otherwise and NumericalError if a slice does not
/// converge.
double marginal_ratio_density(const JointDensityParams& p, double r,
                              const MarginalOptions& opt = {});

/// Contribution of the single slice j (1-based) before the 1/(n-2) average.
double marginal_slice(const JointDensityParams& p, std::size_t slice, double r,
                      const MarginalOptions& opt = {});

enum class MaxRatioMethod { Quadrature, MonteCarlo };

struct MaxRatioEstimate {
  double probability = 0.0;
  double standard_error = 0.0;  // zero for Quadrature
};

struct MaxRatioOptions {
  MaxRatioMethod method = MaxRatioMethod::Quadrature;
  std::size_t realizations = 100000;  // MonteCarlo
  std::uint64_t seed = 1;             // MonteCarlo
  MarginalOptions quadrature{};
};

/// P[max_j r_j < x]. Quadrature integrates the joint ratio density over
/// [0, x]^{n-2} (n <= 4); MonteCarlo samples the tridiagonal models.
MaxRatioEstimate max_ratio_distribution(const JointDensityParams& p, double x,
                                        const MaxRatioOptions& opt = {});

}  // namespace ratiokit
