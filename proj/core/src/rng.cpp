#include "ratiokit/rng.hpp"

#include <cmath>

#include "ratiokit/error.hpp"

namespace ratiokit {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Engine::Engine(RngStream stream) noexcept {
  // Two rounds of mixing keep (seed, j) and (seed', j') from sharing a
  // SplitMix trajectory when seed' - seed happens to equal a golden-ratio
  // multiple of j - j'.
  std::uint64_t key = stream.seed;
  const std::uint64_t a = splitmix64(key);
  std::uint64_t mix = a ^ (stream.stream_index * 0xd1b54a32d192ed03ULL);
  const std::uint64_t b = splitmix64(mix);
  std::uint64_t state = a ^ rotl(b, 23) ^ stream.stream_index;
  for (auto& word : s_) word = splitmix64(state);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

Engine::result_type Engine::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Engine::uniform() noexcept {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Engine::normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * factor;
  has_cached_normal_ = true;
  return u * factor;
}

double Engine::exponential() noexcept { return -std::log(uniform()); }

double Engine::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw ParameterError("gamma shape must be a positive finite number");
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    const double g = gamma(shape + 1.0);
    return g * std::exp(std::log(uniform()) / shape);
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Engine::chi(double dof) {
  if (!(dof > 0.0)) throw ParameterError("chi degrees of freedom must be positive");
  return std::sqrt(2.0 * gamma(0.5 * dof));
}

}  // namespace ratiokit
