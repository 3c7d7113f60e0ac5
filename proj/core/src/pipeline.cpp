#include "ratiokit/pipeline.hpp"

#include "ratiokit/error.hpp"
#include "ratiokit/parallel.hpp"

namespace ratiokit {

StatKind parse_stat(const std::string& name) {
  if (name == "ratio") return StatKind::Ratio;
  if (name == "tilde") return StatKind::Tilde;
  if (name == "overlap") return StatKind::Overlap;
  throw ParameterError("unknown statistic '" + name + "' (expected ratio, tilde or overlap)");
}

std::string to_string(StatKind kind) {
  switch (kind) {
    case StatKind::Ratio: return "ratio";
    case StatKind::Tilde: return "tilde";
    case StatKind::Overlap: return "overlap";
  }
  return "unknown";
}

std::vector<double> statistic_values(const Spectrum& s, const StatRequest& req) {
  switch (req.kind) {
    case StatKind::Ratio: return consecutive_ratios(s).values;
    case StatKind::Tilde: return tilde_ratios(consecutive_ratios(s)).values;
    case StatKind::Overlap: return overlapping_ratios(s, req.k).values;
  }
  return {};
}

void SpectrumStatistics::add(const Spectrum& s, const StatRequest& req) {
  const auto r = consecutive_ratios(s);
  for (double v : r.values) {
    ratio.add(v);
    tilde.add(v < 1.0 ? v : 1.0 / v);
  }
  if (req.kind == StatKind::Ratio) {
    histogram.add(r.values);
  } else {
    histogram.add(statistic_values(s, req));
  }
  ++spectra;
}

void SpectrumStatistics::merge(const SpectrumStatistics& other) {
  histogram.merge(other.histogram);
  ratio.merge(other.ratio);
  tilde.merge(other.tilde);
  spectra += other.spectra;
  resamples += other.resamples;
}

SpectrumStatistics spectrum_statistics(const Spectrum& s, const StatRequest& req) {
  SpectrumStatistics out(req.edges);
  out.add(s, req);
  return out;
}

SpectrumStatistics ensemble_statistics(const EnsembleSpec& spec, std::size_t realizations,
                                       std::uint64_t seed, const StatRequest& req,
                                       std::size_t workers, const SamplerOptions& options) {
  spec.validate();
  if (realizations == 0) throw ParameterError("realizations must be >= 1");
  constexpr std::size_t kBlock = 64;
  return deterministic_reduce(
      realizations, kBlock, workers, [&] { return SpectrumStatistics(req.edges); },
      [&](SpectrumStatistics& acc, std::size_t i) {
        auto real = sample_realization(spec, seed, i, options);
        acc.resamples += real.resamples;
        acc.add(real.spectrum, req);
      },
      [](SpectrumStatistics& into, SpectrumStatistics&& block) { into.merge(block); });
}

}  // namespace ratiokit
