#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rydberg {

/// Name recorded in output metadata; bump the suffix if the stream
/// derivation or the sampling primitives below ever change.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256**/splitmix64-stream-v1";

std::uint64_t splitmix64_next(std::uint64_t& state);

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  /// State filled from a splitmix64 sequence started at `seed`.
  explicit Xoshiro256(std::uint64_t seed);

  /// Independent sub-stream for repetition `index` of a run seeded with `seed`.
  static Xoshiro256 stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::array<std::uint64_t, 4> s_{};
};

// Portable draws; the std:: distributions are implementation-defined.

/// Uniform integer in [0, bound), bound > 0, by rejection.
std::uint64_t uniform_below(Xoshiro256& rng, std::uint64_t bound);
/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Xoshiro256& rng);

}  // namespace rydberg
