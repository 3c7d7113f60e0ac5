#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ratiokit {

// --- Poisson-nu family ------------------------------------------------------

/// Spacing law with repulsion s^nu, exponential tail, unit norm and unit mean.
double poisson_nu_spacing(double nu, double s);

/// Ratio law of two consecutive Poisson-nu spacings; 1/(1+r)^2 at nu = 0.
double poisson_nu_ratio(double nu, double r);

// --- Gaussian small-N ratio laws -------------------------------------------

/// Normalization constant of the 3x3 beta-Hermite ratio law.
double surmise3_norm(double beta);

/// Exact ratio density of 3x3 beta-Hermite matrices,
/// (r + r^2)^beta / (1 + r + r^2)^(1 + 3 beta / 2) / Z_beta.
double surmise3_ratio(double beta, double r);

/// Closed-form ratio density of 4x4 GUE (beta = 2) matrices.
double hermite4_beta2_ratio(double r);

/// Integer coefficient tables (ascending powers) of the two polynomials in
/// the 4x4 GUE closed form.
const std::vector<std::int64_t>& hermite4_beta2_q1();
const std::vector<std::int64_t>& hermite4_beta2_q2();

// --- Nearest-neighbour spacing surmises ------------------------------------

struct WignerConstants {
  double a;  // prefactor
  double b;  // Gaussian exponent
};

/// Throws ParameterError unless beta is 1, 2 or 4.
WignerConstants wigner_constants(int beta);

/// A_beta s^beta exp(-B_beta s^2).
double wigner_surmise(int beta, double s);

/// Unnormalized 3x3 spacing function p_beta(s) (closed form with erfc).
double nn3_raw(int beta, double s);

/// Scale constants a_beta, b_beta giving unit norm and unit mean.
WignerConstants nn3_constants(int beta);

/// a_beta p_beta(b_beta s).
double nn3_spacing(int beta, double s);

// --- Overlapping ratios ------------------------------------------------------

/// Poisson law of the k-th overlapping ratio (piecewise in r < 1, r > 1).
double poisson_overlap(std::size_t k, double r);

enum class OverlapMode { Integral, ClosedForm };

/// k = 1 overlapping-ratio density of 4x4 beta-Hermite matrices, beta in
/// {1, 2, 4}. Integral mode does the one-dimensional z quadrature, ClosedForm
/// evaluates (-1)^(beta+1) Lambda(r) + Lambda(-r).
double hermite_overlap_k1(int beta, double r, OverlapMode mode = OverlapMode::ClosedForm);

/// Lambda^(beta)(x) for real x (negative arguments allowed).
double hermite_overlap_lambda(int beta, double x);

/// Q^(beta) coefficients in ascending powers of w = r + 1/r.
const std::vector<std::int64_t>& hermite_overlap_q(int beta);

/// Constant d_beta of the closed form.
double hermite_overlap_d(int beta);

/// Integral-mode prefactor c_beta fixed by unit normalization.
double hermite_overlap_c(int beta);

/// c_beta in closed form, sqrt(pi) 8^(3 beta + 1) Gamma(3/2 + 3 beta) / Z_{4,beta}.
double hermite_overlap_c_closed(int beta);

/// Small-r prefactor xi_beta: P(r) ~ xi_beta r^(3 beta + 1).
double hermite_overlap_xi(int beta);

// --- Model wrapper ----------------------------------------------------------

enum class DensityFamily {
  PoissonNuSpacing,
  PoissonNuRatio,
  Surmise3,
  Hermite4Beta2Ratio,
  WignerSurmise,
  NN3,
  PoissonOverlap,
  HermiteOverlapK1,
};

struct Support {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Power laws at the two ends of the support: density ~ x^small for x -> 0
/// and ~ x^large for x -> infinity. Spacing laws have no algebraic large-x
/// exponent (Gaussian/exponential tails), flagged by large = nullopt.
struct AsymptoticLaw {
  double small_exponent = 0.0;
  std::optional<double> large_exponent;
  std::optional<double> small_prefactor;
};

class DensityModel {
 public:
  /// `parameter` is beta, nu or k depending on the family.
  DensityModel(DensityFamily family, double parameter,
               OverlapMode overlap_mode = OverlapMode::ClosedForm);

  double operator()(double x) const;
  DensityFamily family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }
  Support support() const noexcept { return {}; }
  AsymptoticLaw asymptotics() const;
  std::string name() const;

  /// True when the density satisfies rho(x) = x^-2 rho(1/x).
  bool has_ratio_duality() const noexcept;

 private:
  DensityFamily family_;
  double parameter_;
  OverlapMode overlap_mode_;
};

DensityFamily parse_density_family(const std::string& name);

}  // namespace ratiokit
