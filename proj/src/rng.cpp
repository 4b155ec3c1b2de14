#include "rydberg/rng.hpp"

#include <bit>

namespace rydberg {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix64_next(sm);
}

Xoshiro256 Xoshiro256::stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t key = seed;
  const std::uint64_t a = splitmix64_next(key);
  std::uint64_t mixed = a ^ (index * 0xd1b54a32d192ed03ull);
  return Xoshiro256(splitmix64_next(mixed));
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

std::uint64_t uniform_below(Xoshiro256& rng, std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

double uniform_unit(Xoshiro256& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace rydberg
