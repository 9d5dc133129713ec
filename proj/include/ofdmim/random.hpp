#pragma once

#include <cstdint>
#include <limits>

namespace ofdmim {

__extension__ using uint128 = unsigned __int128;

// splitmix64 finalizer; a good 64-bit mixing bijection.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-style split: the seed of sub-stream `index` of stream `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// Stream labels for everything drawn once per experiment from its seed.
enum class StreamTag : std::uint64_t {
  trials = 0,
  phase_sequences = 1,
  permutations = 2,
  analysis = 3,
};

/**
 * Small, fast, reproducible generator (splitmix64).
 *
 * Satisfies UniformRandomBitGenerator. Bounded integers and doubles are drawn
 * with our own fixed algorithms rather than std:: distributions so outputs do
 * not depend on the standard library implementation.
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}
  Rng(std::uint64_t seed, StreamTag tag) noexcept
      : state_(derive_seed(seed, ~static_cast<std::uint64_t>(tag))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound); bound must be > 0. Lemire's method.
  std::uint64_t below(std::uint64_t bound) noexcept {
    uint128 m = static_cast<uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace ofdmim
