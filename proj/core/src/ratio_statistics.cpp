#include "ratiokit/ratio_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "ratiokit/error.hpp"

namespace ratiokit {

std::string RatioSeries::label() const {
  switch (kind) {
    case RatioKind::Consecutive: return "ratio";
    case RatioKind::Tilde: return "tilde";
    case RatioKind::Overlapping: return "overlap_k" + std::to_string(k);
  }
  return "unknown";
}

RatioSeries consecutive_ratios(std::span<const double> levels) {
  if (levels.size() < 3) throw ParameterError("consecutive_ratios: need at least 3 levels");
  RatioSeries out;
  out.kind = RatioKind::Consecutive;
  out.values.resize(levels.size() - 2);
  double prev = levels[1] - levels[0];
  if (!(prev > 0.0))
    throw DegenerateSpectrumError("consecutive_ratios: zero spacing at index 0", 0);
  for (std::size_t n = 0; n + 2 < levels.size(); ++n) {
    const double next = levels[n + 2] - levels[n + 1];
    if (!(next > 0.0))
      throw DegenerateSpectrumError(
          "consecutive_ratios: zero spacing at index " + std::to_string(n + 1), n + 1);
    out.values[n] = next / prev;
    prev = next;
  }
  return out;
}

RatioSeries consecutive_ratios(const Spectrum& s) { return consecutive_ratios(s.levels); }

RatioSeries tilde_ratios(const RatioSeries& r) {
  if (r.kind != RatioKind::Consecutive)
    throw ParameterError("tilde_ratios: input must be a Consecutive series");
  RatioSeries out;
  out.kind = RatioKind::Tilde;
  out.values.reserve(r.values.size());
  for (double v : r.values) out.values.push_back(std::min(v, 1.0 / v));
  return out;
}

RatioSeries overlapping_ratios(std::span<const double> levels, std::size_t k) {
  if (k < 1) throw ParameterError("overlapping_ratios: k must be >= 1");
  if (levels.size() < k + 3)
    throw ParameterError("overlapping_ratios: need at least k+3 levels");
  RatioSeries out;
  out.kind = RatioKind::Overlapping;
  out.k = k;
  const std::size_t count = levels.size() - k - 2;
  out.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = i + 1;
    const double num = levels[n + k + 1] - levels[n];
    const double den = levels[n + k] - levels[n - 1];
    if (!(den > 0.0))
      throw DegenerateSpectrumError(
          "overlapping_ratios: zero denominator at index " + std::to_string(n - 1), n - 1);
    if (!(num > 0.0))
      throw DegenerateSpectrumError(
          "overlapping_ratios: zero numerator at index " + std::to_string(n), n);
    out.values[i] = num / den;
  }
  return out;
}

RatioSeries overlapping_ratios(const Spectrum& s, std::size_t k) {
  return overlapping_ratios(s.levels, k);
}

RdsVector rds_vector(std::span<const double> levels) {
  if (levels.size() < 3) throw ParameterError("rds_vector: need at least 3 levels");
  const double first = levels[1] - levels[0];
  if (!(first > 0.0)) throw DegenerateSpectrumError("rds_vector: degenerate first spacing", 0);
  RdsVector out;
  out.f.resize(levels.size() - 2);
  for (std::size_t j = 0; j < out.f.size(); ++j) out.f[j] = (levels[j + 2] - levels[1]) / first;
  return out;
}

RdsVector rds_vector(const Spectrum& s) { return rds_vector(s.levels); }

RdsVector rds_from_ratios(std::span<const double> ratios) {
  RdsVector out;
  out.f.reserve(ratios.size());
  double product = 1.0;
  double sum = 0.0;
  for (double r : ratios) {
    product *= r;
    sum += product;
    out.f.push_back(sum);
  }
  return out;
}

std::vector<double> ratios_from_rds(const RdsVector& rds) {
  std::vector<double> r(rds.f.size());
  double f2 = -1.0, f1 = 0.0;  // f_{j-2}, f_{j-1}
  for (std::size_t j = 0; j < rds.f.size(); ++j) {
    r[j] = (rds.f[j] - f1) / (f1 - f2);
    f2 = f1;
    f1 = rds.f[j];
  }
  return r;
}

// --- histogram ----------------------------------------------------------------

Histogram::Histogram(std::vector<double> e) : edges(std::move(e)) {
  if (edges.size() < 2) throw ParameterError("histogram needs at least two edges");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1])) throw ParameterError("histogram edges must be strictly ascending");
  counts.assign(edges.size() - 1, 0);
}

void Histogram::add(double value) noexcept {
  ++total;
  if (!(value >= edges.front())) {
    ++underflow;
    return;
  }
  if (value >= edges.back()) {
    ++overflow;
    return;
  }
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
}

void Histogram::add(std::span<const double> values) noexcept {
  for (double v : values) add(v);
}

void Histogram::merge(const Histogram& other) {
  if (other.edges != edges) throw ParameterError("cannot merge histograms with different edges");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
  underflow += other.underflow;
  overflow += other.overflow;
}

std::vector<double> uniform_edges(double lo, double hi, double width) {
  if (!(width > 0.0) || !(hi > lo)) throw ParameterError("uniform_edges: need hi > lo and width > 0");
  const auto bins = static_cast<std::size_t>(std::llround((hi - lo) / width));
  if (bins < 1 || std::abs(lo + static_cast<double>(bins) * width - hi) > 1e-9 * (hi - lo))
    throw ParameterError("uniform_edges: (hi - lo) must be a whole number of bins");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
  edges.back() = hi;
  return edges;
}

std::vector<double> default_ratio_edges() { return uniform_edges(0.0, 5.0, 0.05); }

Histogram histogram(std::span<const double> values, std::vector<double> edges) {
  Histogram h(std::move(edges));
  h.add(values);
  return h;
}

Histogram histogram(const RatioSeries& values, std::vector<double> edges) {
  return histogram(std::span<const double>(values.values), std::move(edges));
}

std::vector<DensityRow> normalize(const Histogram& h) {
  std::vector<DensityRow> rows;
  rows.reserve(h.bins());
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double width = h.edges[i + 1] - h.edges[i];
    const double density =
        h.total == 0 ? 0.0 : static_cast<double>(h.counts[i]) / (static_cast<double>(h.total) * width);
    rows.push_back({h.edges[i], h.edges[i + 1], h.counts[i], density});
  }
  return rows;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  const auto old_precision = out.precision(17);
  out << "bin_left,bin_right,count,density\n";
  for (const auto& row : normalize(h))
    out << row.left << ',' << row.right << ',' << row.count << ',' << row.density << '\n';
  out.precision(old_precision);
}

double SampleMoments::mean() const noexcept {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double SampleMoments::variance() const noexcept {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double SampleMoments::standard_error() const noexcept {
  return count < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count));
}

}  // namespace ratiokit
