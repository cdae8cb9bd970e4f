#pragma once

// Portable pseudorandom sources. Everything here is fully specified so that a
// given seed yields the same stream on every platform and in every language
// port; nothing depends on <random>'s implementation-defined distributions.

#include <cstddef>
#include <cstdint>
#include <limits>

namespace gapstat::rng {

/// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Marsaglia xorshift64* generator (shifts 12/25/27, multiplier
/// 0x2545F4914F6CDD1D). The seed is passed through mix64 so that nearby seeds
/// give unrelated streams and the all-zero state is never reached.
class Xorshift64Star {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xorshift64Star(std::uint64_t seed) noexcept
      : state_(mix64(seed + kGoldenGamma)) {
    if (state_ == 0) state_ = kGoldenGamma;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform draw on the open interval (0, 1): the top 53 bits, offset by half
  /// a step, so neither 0 nor 1 is ever produced.
  constexpr double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace gapstat::rng
