#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ratiokit {

/// Ordered (ascending) real levels plus where they came from.
struct Spectrum {
  std::vector<double> levels;
  std::string source;
  std::optional<std::uint64_t> seed;
  /// Number of adjacent pairs equal to within 1e-13 relative. Set by the
  /// file reader and by the samplers' degeneracy guard.
  std::size_t near_duplicates = 0;

  std::size_t size() const noexcept { return levels.size(); }
  bool is_sorted() const noexcept;
};

/// Keeps every `stride`-th level starting at `offset`.
Spectrum decimate(const Spectrum& s, std::size_t stride, std::size_t offset = 0);

enum class SpectrumHalf { Lower, Upper };

/// Lower or upper half of the levels (by count). For an odd count the
/// middle level goes to the upper half.
Spectrum half_of(const Spectrum& s, SpectrumHalf which);

}  // namespace ratiokit
