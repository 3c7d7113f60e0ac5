#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "ratiokit/ratio_statistics.hpp"

namespace ratiokit {

struct BinResidual {
  double left;
  double right;
  double empirical;  // count / (total * width)
  double reference;  // bin-averaged reference density
  double residual;   // empirical - reference
};

struct ComparisonResult {
  std::vector<BinResidual> bins;
  double sup_norm = 0.0;
  double chi2 = 0.0;
  std::size_t chi2_dof = 0;
  double chi2_p_value = 1.0;
  /// Kolmogorov distance between the binned empirical CDF and the reference
  /// CDF, evaluated at the bin edges.
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
};

/// `bin_mass(a, b)` returns the reference probability of [a, b). Bins with
/// expected count below `min_expected` are pooled out of the chi^2 sum.
ComparisonResult compare_histogram(const Histogram& h,
                                   const std::function<double(double, double)>& bin_mass,
                                   double min_expected = 5.0);

/// Asymptotic Kolmogorov survival function Q_KS(lambda).
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Exact two-sample Kolmogorov-Smirnov distance with asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS against a continuous CDF.
KsResult ks_one_sample(std::span<const double> values,
                       const std::function<double(double)>& cdf);

/// CSV with header bin_left,bin_right,empirical,reference,residual.
void write_residual_csv(std::ostream& out, const ComparisonResult& c);

}  // namespace ratiokit
