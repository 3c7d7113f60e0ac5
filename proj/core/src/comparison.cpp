#include "ratiokit/comparison.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ratiokit/error.hpp"

namespace ratiokit {

ComparisonResult compare_histogram(const Histogram& h,
                                   const std::function<double(double, double)>& bin_mass,
                                   double min_expected) {
  ComparisonResult c;
  if (h.total == 0) throw ParameterError("compare_histogram: empty histogram");
  const double total = static_cast<double>(h.total);

  // Reference CDF at the lower edge: mass below the histogram range.
  double ref_cdf = bin_mass(0.0, h.edges.front());
  double emp_cdf = static_cast<double>(h.underflow) / total;
  c.ks_statistic = std::abs(emp_cdf - ref_cdf);

  double pooled_observed = 0.0, pooled_expected = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double a = h.edges[i], b = h.edges[i + 1];
    const double width = b - a;
    const double mass = bin_mass(a, b);
    const double observed = static_cast<double>(h.counts[i]);
    BinResidual r{a, b, observed / (total * width), mass / width, 0.0};
    r.residual = r.empirical - r.reference;
    c.sup_norm = std::max(c.sup_norm, std::abs(r.residual));
    c.bins.push_back(r);

    const double expected = mass * total;
    if (expected >= min_expected) {
      c.chi2 += (observed - expected) * (observed - expected) / expected;
      ++c.chi2_dof;
    } else {
      pooled_observed += observed;
      pooled_expected += expected;
    }
    ref_cdf += mass;
    emp_cdf += observed / total;
    c.ks_statistic = std::max(c.ks_statistic, std::abs(emp_cdf - ref_cdf));
  }
  // Out-of-range tail as one extra cell.
  const double tail_expected = std::max(0.0, 1.0 - ref_cdf) * total + pooled_expected;
  const double tail_observed = static_cast<double>(h.overflow) + pooled_observed;
  if (tail_expected >= min_expected) {
    c.chi2 += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
    ++c.chi2_dof;
  }
  if (c.chi2_dof > 1) {
    --c.chi2_dof;  // probabilities sum to one
    c.chi2_p_value = boost::math::gamma_q(0.5 * static_cast<double>(c.chi2_dof), 0.5 * c.chi2);
  }
  const double sqrt_n = std::sqrt(total);
  c.ks_p_value = kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * c.ks_statistic);
  return c;
}

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_one_sample(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw ParameterError("ks_one_sample: empty sample");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - f)});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)};
}

void write_residual_csv(std::ostream& out, const ComparisonResult& c) {
  const auto old = out.precision(17);
  out << "bin_left,bin_right,empirical,reference,residual\n";
  for (const auto& b : c.bins)
    out << b.left << ',' << b.right << ',' << b.empirical << ',' << b.reference << ','
        << b.residual << '\n';
  out.precision(old);
}

}  // namespace ratiokit
