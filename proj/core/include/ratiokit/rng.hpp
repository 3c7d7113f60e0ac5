#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ratiokit {

/// Identifies one reproducible random stream. Identical (seed, stream_index)
/// pairs produce identical draws on every host and thread schedule.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256** whose 256-bit state is a pure function of an RngStream, so
/// stream j never depends on draws made by streams 0..j-1.
class Engine {
 public:
  using result_type = std::uint64_t;

  explicit Engine(RngStream stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform() noexcept;

  /// Standard normal (Marsaglia polar method).
  double normal() noexcept;

  /// Gamma(shape, scale = 1) for any real shape > 0.
  double gamma(double shape);

  /// Chi-distributed variate with `dof` > 0 degrees of freedom.
  double chi(double dof);

  double exponential() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace ratiokit
