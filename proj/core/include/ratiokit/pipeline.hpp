#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ratiokit/ensemble.hpp"
#include "ratiokit/ratio_statistics.hpp"

namespace ratiokit {

enum class StatKind { Ratio, Tilde, Overlap };

StatKind parse_stat(const std::string& name);
std::string to_string(StatKind kind);

struct StatRequest {
  StatKind kind = StatKind::Ratio;
  std::size_t k = 1;  // Overlap only
  std::vector<double> edges = default_ratio_edges();
};

/// Histogram of the requested statistic plus running moments of r and
/// min(r, 1/r), which are always collected.
struct SpectrumStatistics {
  Histogram histogram;
  SampleMoments ratio;
  SampleMoments tilde;
  std::uint64_t spectra = 0;
  std::uint64_t resamples = 0;

  SpectrumStatistics() = default;
  explicit SpectrumStatistics(std::vector<double> edges) : histogram(std::move(edges)) {}

  void add(const Spectrum& s, const StatRequest& req);
  void merge(const SpectrumStatistics& other);
};

std::vector<double> statistic_values(const Spectrum& s, const StatRequest& req);

SpectrumStatistics spectrum_statistics(const Spectrum& s, const StatRequest& req);

/// Realization j is drawn from RngStream(seed, j); blocks of realizations are
/// merged in index order, so the result does not depend on `workers`.
SpectrumStatistics ensemble_statistics(const EnsembleSpec& spec, std::size_t realizations,
                                       std::uint64_t seed, const StatRequest& req,
                                       std::size_t workers, const SamplerOptions& options = {});

}  // namespace ratiokit
