#pragma once

#include <ratiokit/quadrature.hpp>

#include <cmath>
#include <vector>

namespace testing_support {

// Integral over [0, inf) of a density, with breaks at small r so that mass
// concentrated near the origin is seen by the first partition.
template <class F>
double total_mass(F&& f, double rel = 1e-11, double abs = 1e-13) {
  ratiokit::quad::Options opt;
  opt.rel_tol = rel;
  opt.abs_tol = abs;
  opt.max_subdivisions = 20000;
  return ratiokit::quad::integrate_semi_infinite(f, 0.0, 1.0, opt).value;
}

// Central log-log derivative d ln f / d ln x at x.
template <class F>
double loglog_slope(F&& f, double x, double h = 1e-3) {
  const double up = x * std::exp(h);
  const double down = x * std::exp(-h);
  return (std::log(f(up)) - std::log(f(down))) / (2.0 * h);
}

inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace testing_support
