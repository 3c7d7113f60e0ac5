#include "ratiokit/spectrum.hpp"

#include <algorithm>

#include "ratiokit/error.hpp"

namespace ratiokit {

bool Spectrum::is_sorted() const noexcept {
  return std::is_sorted(levels.begin(), levels.end());
}

Spectrum decimate(const Spectrum& s, std::size_t stride, std::size_t offset) {
  if (stride == 0) throw ParameterError("decimation stride must be >= 1");
  Spectrum out;
  out.source = s.source + " | decimate(" + std::to_string(stride) + "," +
               std::to_string(offset) + ")";
  out.seed = s.seed;
  for (std::size_t i = offset; i < s.levels.size(); i += stride)
    out.levels.push_back(s.levels[i]);
  return out;
}

Spectrum half_of(const Spectrum& s, SpectrumHalf which) {
  const std::size_t mid = s.levels.size() / 2;
  Spectrum out;
  out.seed = s.seed;
  if (which == SpectrumHalf::Lower) {
    out.levels.assign(s.levels.begin(), s.levels.begin() + static_cast<std::ptrdiff_t>(mid));
    out.source = s.source + " | lower half";
  } else {
    out.levels.assign(s.levels.begin() + static_cast<std::ptrdiff_t>(mid), s.levels.end());
    out.source = s.source + " | upper half";
  }
  return out;
}

}  // namespace ratiokit
