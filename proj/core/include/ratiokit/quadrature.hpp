#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace ratiokit::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
extern const std::array<double, 11> kKronrodNodes;
extern const std::array<double, 11> kKronrodWeights;
extern const std::array<double, 5> kGaussWeights;  // at odd Kronrod nodes

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const noexcept { return error < o.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv;
  fv[20] = f(center);
  double kronrod = fv[20] * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(fv[20]) * kKronrodWeights[10];
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    fv[2 * i] = f(center - dx);
    fv[2 * i + 1] = f(center + dx);
    const double sum = fv[2 * i] + fv[2 * i + 1];
    kronrod += kKronrodWeights[i] * sum;
    abs_sum += kKronrodWeights[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  const double mean = 0.5 * kronrod;
  double spread = kKronrodWeights[10] * std::abs(fv[20] - mean);
  for (std::size_t i = 0; i < 10; ++i)
    spread += kKronrodWeights[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

  const double ahalf = std::abs(half);
  const double value = kronrod * half;
  const double resabs = abs_sum * ahalf;
  const double resasc = spread * ahalf;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive G10/K21 quadrature on the finite interval [a, b].
/// `breaks` are optional interior points used for the initial partition.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::span<const double> breaks = {}) {
  Result result;
  if (a == b) return result;
  std::vector<double> points;
  points.reserve(breaks.size() + 2);
  points.push_back(a);
  for (double p : breaks)
    if (p > std::min(a, b) && p < std::max(a, b)) points.push_back(p);
  points.push_back(b);
  if (a < b)
    std::sort(points.begin(), points.end());
  else
    std::sort(points.begin(), points.end(), std::greater<>());

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    auto seg = detail::gauss_kronrod21(f, points[i], points[i + 1]);
    result.evaluations += 21;
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }

  std::size_t splits = 0;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (splits >= opt.max_subdivisions) {
      result.converged = false;
      break;
    }
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      result.converged = false;
      break;
    }
    heap.pop();
    auto left = detail::gauss_kronrod21(f, worst.a, mid);
    auto right = detail::gauss_kronrod21(f, mid, worst.b);
    result.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to remove drift from the incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  result.value = total;
  result.error = total_err;
  return result;
}

/// Initial partition of the compactified variable t in [0, 1) used for
/// semi-infinite integrals; resolves mass concentrated near the lower limit
/// or far out in the tail without relying on adaptivity to find it.
inline constexpr std::array<double, 9> kSemiInfiniteBreaks = {
    1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.9, 0.99, 0.999};

/// Integral over [lo, inf) through x = lo + scale * t / (1 - t).
template <class F>
Result integrate_semi_infinite(F&& f, double lo, double scale = 1.0,
                               const Options& opt = {},
                               std::span<const double> t_breaks = kSemiInfiniteBreaks) {
  auto mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    const double x = lo + scale * t / one_minus;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v * scale / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opt, t_breaks);
}

}  // namespace ratiokit::quad
