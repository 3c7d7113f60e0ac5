#include "ratiokit/analytic_densities.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ratiokit/error.hpp"
#include "ratiokit/joint_density.hpp"
#include "ratiokit/quadrature.hpp"

namespace ratiokit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || std::isinf(x)) throw DomainError(std::string(what) + ": argument must be finite and >= 0");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || std::isinf(x)) throw DomainError(std::string(what) + ": argument must be finite and > 0");
}

void require_nu(double nu) {
  if (!(nu >= 0.0) || std::isinf(nu)) throw ParameterError("nu must be finite and >= 0");
}

void require_beta124(int beta) {
  if (beta != 1 && beta != 2 && beta != 4)
    throw ParameterError("beta must be 1, 2 or 4, got " + std::to_string(beta));
}

long double polyval(const std::vector<std::int64_t>& c, long double x) {
  long double acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<long double>(*it);
  return acc;
}

}  // namespace

// --- Poisson-nu -------------------------------------------------------------

double poisson_nu_spacing(double nu, double s) {
  require_nu(nu);
  require_nonnegative(s, "poisson_nu_spacing");
  const double g1 = std::lgamma(nu + 1.0);
  const double g2 = std::lgamma(nu + 2.0);
  const double rate = std::exp(g2 - g1);
  if (s == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return std::exp((nu + 1.0) * g2 - (nu + 2.0) * g1 + nu * std::log(s) - rate * s);
}

double poisson_nu_ratio(double nu, double r) {
  require_nu(nu);
  require_nonnegative(r, "poisson_nu_ratio");
  const double log_c = std::lgamma(2.0 * nu + 2.0) + 2.0 * std::lgamma(nu + 2.0) -
                       2.0 * std::log(nu + 1.0) - 4.0 * std::lgamma(nu + 1.0);
  if (r == 0.0) return nu == 0.0 ? std::exp(log_c) : 0.0;
  return std::exp(log_c + nu * std::log(r) - (2.0 * nu + 2.0) * std::log1p(r));
}

// --- Gaussian small-N ratio laws -------------------------------------------

double surmise3_norm(double beta) {
  if (!(beta > 0.0)) throw ParameterError("surmise3: beta must be > 0");
  return 2.0 * kPi * std::tgamma(1.0 + beta) /
         (std::pow(3.0, 1.5 * (1.0 + beta)) * std::pow(std::tgamma(1.0 + 0.5 * beta), 2));
}

double surmise3_ratio(double beta, double r) {
  const double z = surmise3_norm(beta);
  require_nonnegative(r, "surmise3_ratio");
  if (r == 0.0) return 0.0;
  return std::exp(beta * std::log(r + r * r) - (1.0 + 1.5 * beta) * std::log1p(r + r * r)) / z;
}

const std::vector<std::int64_t>& hermite4_beta2_q1() {
  static const std::vector<std::int64_t> q{41664,   291648,  946144,  1885440, 2588464,
                                           2610064, 2182624, 1894048, 1973866, 2026558,
                                           1687399, 1037676, 449635,  124362,  17766};
  return q;
}

const std::vector<std::int64_t>& hermite4_beta2_q2() {
  static const std::vector<std::int64_t> q{14, 42, 39, 8, 39, 42, 14};
  return q;
}

namespace {

long double hermite4_f(long double r) {
  const long double u = 4.0L + 4.0L * r + 3.0L * r * r;
  const long double v = 1.0L + r + r * r;
  const long double su = std::sqrt(u);
  const long double bracket = -(r + 2.0L) * polyval(hermite4_beta2_q1(), r) +
                              9.0L * std::sqrt(3.0L) * std::pow(u, 4) * su *
                                  polyval(hermite4_beta2_q2(), r);
  return r * r * (r + 1.0L) * (r + 1.0L) / (std::pow(v, 7) * std::pow(u, 4) * su) * bracket;
}

}  // namespace

double hermite4_beta2_ratio(double r) {
  require_positive(r, "hermite4_beta2_ratio");
  const long double x = r;
  const long double value = (hermite4_f(x) + hermite4_f(1.0L / x) / (x * x)) /
                            (4.0L * static_cast<long double>(kPi));
  return static_cast<double>(value);
}

// --- Spacing surmises ------------------------------------------------------

WignerConstants wigner_constants(int beta) {
  require_beta124(beta);
  switch (beta) {
    case 1: return {kPi / 2.0, kPi / 4.0};
    case 2: return {32.0 / (kPi * kPi), 4.0 / kPi};
    default: return {std::pow(2.0, 18) / (std::pow(3.0, 6) * kPi * kPi * kPi), 64.0 / (9.0 * kPi)};
  }
}

double wigner_surmise(int beta, double s) {
  const auto c = wigner_constants(beta);
  require_nonnegative(s, "wigner_surmise");
  return c.a * std::pow(s, beta) * std::exp(-c.b * s * s);
}

double nn3_raw(int beta, double s) {
  require_beta124(beta);
  require_nonnegative(s, "nn3_raw");
  const double s2 = s * s;
  const double gauss = kSqrtPi * std::erfc(0.5 * s) * std::exp(-0.75 * s2);
  const double tail = std::exp(-s2);
  switch (beta) {
    case 1:
      return s / 8.0 * (-gauss * (s2 - 2.0) + 2.0 * s * tail);
    case 2:
      return s2 / 32.0 * (gauss * (s2 * s2 - 4.0 * s2 + 12.0) - 2.0 * s * (s2 - 6.0) * tail);
    default: {
      const double s4 = s2 * s2;
      return s4 / 512.0 *
             (gauss * (s4 * s4 - 8.0 * s4 * s2 + 72.0 * s4 - 480.0 * s2 + 1680.0) -
              2.0 * s * (s4 * s2 - 10.0 * s4 + 100.0 * s2 - 840.0) * tail);
    }
  }
}

WignerConstants nn3_constants(int beta) {
  require_beta124(beta);
  switch (beta) {
    case 1: return {27.0 / (2.0 * kPi), 3.0 / (2.0 * kSqrtPi)};
    case 2: return {std::pow(3.0, 6) / (32.0 * std::pow(kPi, 1.5)), std::pow(3.0, 2.5) / (8.0 * kSqrtPi)};
    default:
      return {std::pow(3.0, 10) / (1024.0 * 25.0 * std::pow(kPi, 1.5)),
              std::pow(3.0, 5.5) / (32.0 * 5.0 * kSqrtPi)};
  }
}

double nn3_spacing(int beta, double s) {
  const auto c = nn3_constants(beta);
  require_nonnegative(s, "nn3_spacing");
  return c.a * nn3_raw(beta, c.b * s);
}

// --- Overlapping ratios ------------------------------------------------------

double poisson_overlap(std::size_t k, double r) {
  if (k < 1) throw ParameterError("poisson_overlap: k must be >= 1");
  require_positive(r, "poisson_overlap");
  const double kk = static_cast<double>(k);
  const double q = (1.0 + r) * (1.0 + r);
  if (r <= 1.0) return std::pow(r, kk) * (kk + 1.0 + kk * r) / q;
  return (kk + r * (kk + 1.0)) / (std::pow(r, kk + 1.0) * q);
}

const std::vector<std::int64_t>& hermite_overlap_q(int beta) {
  require_beta124(beta);
  static const std::vector<std::int64_t> q1{12, -36, 20, 15};
  static const std::vector<std::int64_t> q2{1920, -10560, 19184, -8552, -9124, 5454, 2727};
  static const std::vector<std::int64_t> q4{
      3244032,    -34062336, 146853888, -320587776, 322416384, 12364416, -318898752,
      172975392,  113704048, -96136152, -26756676,  19539090,  5861727};
  switch (beta) {
    case 1: return q1;
    case 2: return q2;
    default: return q4;
  }
}

double hermite_overlap_d(int beta) {
  require_beta124(beta);
  switch (beta) {
    case 1: return 8.0;
    case 2: return 8.0 / kPi;
    default: return 32.0 / (3.0 * kPi);
  }
}

double hermite_overlap_xi(int beta) {
  require_beta124(beta);
  const double s3 = std::sqrt(3.0);
  switch (beta) {
    case 1: return 2240.0 / (81.0 * s3);
    case 2: return 512512.0 / (729.0 * kPi * s3);
    default: return 174054932480.0 / (4782969.0 * kPi * s3);
  }
}

namespace {

// The closed form subtracts two terms of size r^4 to leave r^(3 beta + 1), so
// it is assembled in 50-digit arithmetic and rounded once at the end.
using WideFloat = boost::multiprecision::cpp_bin_float_50;

WideFloat wide_lambda(int beta, const WideFloat& r) {
  const auto& q = hermite_overlap_q(beta);
  const WideFloat w = r + 1 / r;
  WideFloat poly = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) poly = poly * w + WideFloat(*it);
  const WideFloat h = 3 - 2 * r + 3 * r * r;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  using boost::multiprecision::abs;
  return WideFloat(hermite_overlap_d(beta)) * pow(r, 4 * beta) * pow(abs(r - 1), 2 * beta + 1) /
         (pow(1 + r * r, 3 * beta + 1) * pow(h, 2 * beta) * sqrt(h)) * poly;
}

}  // namespace

double hermite_overlap_lambda(int beta, double x) {
  require_beta124(beta);
  if (x == 0.0) return 0.0;
  return static_cast<double>(wide_lambda(beta, WideFloat(x)));
}

namespace {

// Unnormalized integrand (log) of the one-dimensional z representation.
// With 1 - z = (1 - r) w the prefactor |1 - r|^(2 beta + 1) cancels against
// the integral, leaving one kernel in w = 1 + t valid on both sides of r = 1:
//   z^b (1 + r w)^b t^b w^(2b+1) / [(1+r)^2 w^2 + 2(1 + z^2)]^(3/2 + 3b),
// z = r - (1 - r) t. The range is t in (0, r / (1 - r)) for r < 1 and
// (0, inf) otherwise; t = tan(theta) compactifies it.
double overlap_log_kernel(double beta, double r, double t) {
  const double w = 1.0 + t;
  const double z = r - (1.0 - r) * t;
  if (!(z > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = (1.0 + r) * w;
  const double m = std::max({a, z, 1.0});
  const double log_den =
      2.0 * std::log(m) + std::log((a / m) * (a / m) + 2.0 * ((1.0 / m) * (1.0 / m) + (z / m) * (z / m)));
  return beta * (std::log(z) + std::log1p(r * w) + std::log(t)) + (2.0 * beta + 1.0) * std::log(w) -
         (1.5 + 3.0 * beta) * log_den;
}

double overlap_unnormalized(int beta_i, double r) {
  const double beta = beta_i;
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  const double theta_max = r < 1.0 ? std::atan(r / (1.0 - r)) : 0.5 * kPi;
  auto f = [&](double theta) {
    if (theta <= 0.0 || theta >= theta_max) return 0.0;
    const double t = std::tan(theta);
    return std::exp(std::log1p(t * t) + overlap_log_kernel(beta, r, t));
  };
  const auto res = quad::integrate(f, 0.0, theta_max, opt);
  if (!res.converged)
    throw NumericalError("hermite_overlap_k1: z quadrature did not converge at r = " + std::to_string(r));
  return std::exp(beta * std::log(r) + std::log(res.value));
}

double compute_overlap_c(int beta) {
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-11;
  auto lower_f = [beta](double r) { return r <= 0.0 || r >= 1.0 ? 0.0 : overlap_unnormalized(beta, r); };
  // r > 1 mapped to u = 1/r on (0, 1)
  auto upper_f = [beta](double u) {
    return u <= 0.0 || u >= 1.0 ? 0.0 : overlap_unnormalized(beta, 1.0 / u) / (u * u);
  };
  const auto lower = quad::integrate(lower_f, 0.0, 1.0, opt);
  const auto upper = quad::integrate(upper_f, 0.0, 1.0, opt);
  if (!lower.converged || !upper.converged)
    throw NumericalError("hermite_overlap_c: normalization quadrature did not converge");
  return 1.0 / (lower.value + upper.value);
}

}  // namespace

double hermite_overlap_c(int beta) {
  require_beta124(beta);
  static const double c1 = compute_overlap_c(1);
  static const double c2 = compute_overlap_c(2);
  static const double c4 = compute_overlap_c(4);
  switch (beta) {
    case 1: return c1;
    case 2: return c2;
    default: return c4;
  }
}

double hermite_overlap_c_closed(int beta) {
  require_beta124(beta);
  const double b = beta;
  return std::exp(0.5 * std::log(kPi) + (3.0 * b + 1.0) * std::log(8.0) + std::lgamma(1.5 + 3.0 * b) -
                  log_hermite_partition(4, b));
}

double hermite_overlap_k1(int beta, double r, OverlapMode mode) {
  require_beta124(beta);
  require_positive(r, "hermite_overlap_k1");
  if (mode == OverlapMode::Integral) return hermite_overlap_c(beta) * overlap_unnormalized(beta, r);
  const WideFloat x(r);
  const WideFloat value = (beta % 2 == 1) ? wide_lambda(beta, x) + wide_lambda(beta, -x)
                                          : wide_lambda(beta, -x) - wide_lambda(beta, x);
  return static_cast<double>(value);
}

// --- DensityModel -----------------------------------------------------------

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

}  // namespace

DensityModel::DensityModel(DensityFamily family, double parameter, OverlapMode overlap_mode)
    : family_(family), parameter_(parameter), overlap_mode_(overlap_mode) {
  switch (family_) {
    case DensityFamily::PoissonNuSpacing:
    case DensityFamily::PoissonNuRatio:
      require_nu(parameter_);
      break;
    case DensityFamily::Surmise3:
      if (!(parameter_ > 0.0) || std::isinf(parameter_)) throw ParameterError("beta must be > 0");
      break;
    case DensityFamily::Hermite4Beta2Ratio:
      if (parameter_ != 2.0) throw ParameterError("the 4x4 closed form exists for beta = 2 only");
      break;
    case DensityFamily::WignerSurmise:
    case DensityFamily::NN3:
    case DensityFamily::HermiteOverlapK1:
      if (!is_integer(parameter_)) throw ParameterError("beta must be 1, 2 or 4");
      require_beta124(static_cast<int>(parameter_));
      break;
    case DensityFamily::PoissonOverlap:
      if (!is_integer(parameter_) || parameter_ < 1.0) throw ParameterError("k must be a positive integer");
      break;
  }
}

double DensityModel::operator()(double x) const {
  switch (family_) {
    case DensityFamily::PoissonNuSpacing: return poisson_nu_spacing(parameter_, x);
    case DensityFamily::PoissonNuRatio: return poisson_nu_ratio(parameter_, x);
    case DensityFamily::Surmise3: return surmise3_ratio(parameter_, x);
    case DensityFamily::Hermite4Beta2Ratio:
      require_nonnegative(x, "hermite4_beta2_ratio");
      return x == 0.0 ? 0.0 : hermite4_beta2_ratio(x);
    case DensityFamily::WignerSurmise: return wigner_surmise(static_cast<int>(parameter_), x);
    case DensityFamily::NN3: return nn3_spacing(static_cast<int>(parameter_), x);
    case DensityFamily::PoissonOverlap:
      require_nonnegative(x, "poisson_overlap");
      return x == 0.0 ? 0.0 : poisson_overlap(static_cast<std::size_t>(parameter_), x);
    case DensityFamily::HermiteOverlapK1:
      require_nonnegative(x, "hermite_overlap_k1");
      return x == 0.0 ? 0.0 : hermite_overlap_k1(static_cast<int>(parameter_), x, overlap_mode_);
  }
  return 0.0;
}

AsymptoticLaw DensityModel::asymptotics() const {
  const double p = parameter_;
  switch (family_) {
    case DensityFamily::PoissonNuSpacing:
      return {p, std::nullopt,
              std::exp((p + 1.0) * std::lgamma(p + 2.0) - (p + 2.0) * std::lgamma(p + 1.0))};
    case DensityFamily::PoissonNuRatio:
      return {p, -(p + 2.0), poisson_nu_ratio(p, 1.0) * std::pow(2.0, 2.0 * p + 2.0)};
    case DensityFamily::Surmise3: return {p, -(2.0 + p), 1.0 / surmise3_norm(p)};
    case DensityFamily::Hermite4Beta2Ratio: return {2.0, -4.0, std::nullopt};
    case DensityFamily::WignerSurmise:
      return {p, std::nullopt, wigner_constants(static_cast<int>(p)).a};
    case DensityFamily::NN3: return {p, std::nullopt, std::nullopt};
    case DensityFamily::PoissonOverlap: return {p, -(p + 2.0), p + 1.0};
    case DensityFamily::HermiteOverlapK1:
      return {3.0 * p + 1.0, -(3.0 * p + 3.0), hermite_overlap_xi(static_cast<int>(p))};
  }
  return {};
}

std::string DensityModel::name() const {
  auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (family_) {
    case DensityFamily::PoissonNuSpacing: return "poisson_nu_spacing(nu=" + num(parameter_) + ")";
    case DensityFamily::PoissonNuRatio: return "poisson_nu_ratio(nu=" + num(parameter_) + ")";
    case DensityFamily::Surmise3: return "surmise3(beta=" + num(parameter_) + ")";
    case DensityFamily::Hermite4Beta2Ratio: return "hermite4_beta2";
    case DensityFamily::WignerSurmise: return "wigner(beta=" + num(parameter_) + ")";
    case DensityFamily::NN3: return "nn3(beta=" + num(parameter_) + ")";
    case DensityFamily::PoissonOverlap: return "poisson_overlap(k=" + num(parameter_) + ")";
    case DensityFamily::HermiteOverlapK1:
      return std::string("hermite_overlap_k1(beta=") + num(parameter_) +
             (overlap_mode_ == OverlapMode::Integral ? ",integral)" : ",closed)");
  }
  return "unknown";
}

bool DensityModel::has_ratio_duality() const noexcept {
  switch (family_) {
    case DensityFamily::PoissonNuRatio:
    case DensityFamily::Surmise3:
    case DensityFamily::Hermite4Beta2Ratio:
    case DensityFamily::PoissonOverlap:
    case DensityFamily::HermiteOverlapK1:
      return true;
    default:
      return false;
  }
}

DensityFamily parse_density_family(const std::string& name) {
  static const std::array<std::pair<const char*, DensityFamily>, 8> table{{
      {"poisson-nu-spacing", DensityFamily::PoissonNuSpacing},
      {"poisson-nu-ratio", DensityFamily::PoissonNuRatio},
      {"surmise3", DensityFamily::Surmise3},
      {"hermite4-beta2", DensityFamily::Hermite4Beta2Ratio},
      {"wigner", DensityFamily::WignerSurmise},
      {"nn3", DensityFamily::NN3},
      {"poisson-overlap", DensityFamily::PoissonOverlap},
      {"hermite-overlap-k1", DensityFamily::HermiteOverlapK1},
  }};
  for (const auto& [key, fam] : table)
    if (name == key) return fam;
  throw ParameterError("unknown density family '" + name + "'");
}

}  // namespace ratiokit
