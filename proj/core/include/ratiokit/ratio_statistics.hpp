#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ratiokit/spectrum.hpp"

namespace ratiokit {

enum class RatioKind { Consecutive, Tilde, Overlapping };

struct RatioSeries {
  std::vector<double> values;
  RatioKind kind = RatioKind::Consecutive;
  std::size_t k = 0;  // shared spacings, Overlapping only

  std::string label() const;
};

/// r_n = (l_{n+2} - l_{n+1}) / (l_{n+1} - l_n), n = 0..N-3.
RatioSeries consecutive_ratios(std::span<const double> levels);
RatioSeries consecutive_ratios(const Spectrum& s);

/// min(r, 1/r) of a Consecutive series.
RatioSeries tilde_ratios(const RatioSeries& r);

/// (l_{n+k+1} - l_n) / (l_{n+k} - l_{n-1}) for n = 1..N-k-2.
RatioSeries overlapping_ratios(std::span<const double> levels, std::size_t k);
RatioSeries overlapping_ratios(const Spectrum& s, std::size_t k);

/// Relative disjoint spacings f_j = (l_{j+2} - l_2) / (l_2 - l_1), strictly
/// ascending and positive for a non-degenerate spectrum.
struct RdsVector {
  std::vector<double> f;
};

RdsVector rds_vector(std::span<const double> levels);
RdsVector rds_vector(const Spectrum& s);

/// Same quantity through the cumulative products f_j = sum_{l<=j} prod_{k<=l} r_k.
RdsVector rds_from_ratios(std::span<const double> ratios);

/// Inverse map r_1 = f_1, r_j = (f_j - f_{j-1}) / (f_{j-1} - f_{j-2}).
std::vector<double> ratios_from_rds(const RdsVector& f);

/// Binned counts on explicit edges. Bins are [e_i, e_{i+1}); values outside
/// [e_0, e_last) go to the underflow/overflow counters but still count in
/// `total`, so normalized densities are not inflated by heavy tails.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;

  Histogram() = default;
  explicit Histogram(std::vector<double> edges);

  std::size_t bins() const noexcept { return counts.size(); }
  void add(double value) noexcept;
  void add(std::span<const double> values) noexcept;

  /// Exact integer addition; throws ParameterError if the edges differ.
  void merge(const Histogram& other);

  bool operator==(const Histogram&) const = default;
};

/// n_bins+1 edges lo, lo+w, ..., computed as lo + i*w (no accumulation).
std::vector<double> uniform_edges(double lo, double hi, double width);

/// Default grid r in [0, 5), bin width 0.05.
std::vector<double> default_ratio_edges();

Histogram histogram(std::span<const double> values, std::vector<double> edges);
Histogram histogram(const RatioSeries& values, std::vector<double> edges);

struct DensityRow {
  double left;
  double right;
  std::uint64_t count;
  double density;  // count / (total * width)
};

std::vector<DensityRow> normalize(const Histogram& h);

/// CSV with header bin_left,bin_right,count,density.
void write_histogram_csv(std::ostream& out, const Histogram& h);

struct SampleMoments {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) noexcept {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const SampleMoments& o) noexcept {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const noexcept;
  double variance() const noexcept;  // unbiased
  double standard_error() const noexcept;
};

}  // namespace ratiokit
