#pragma once

#include <cstdint>

namespace sud {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based uniform generator: the value at index n is a pure function
/// of (seed, n), so streams are reproducible bit-for-bit and can be consumed
/// out of order. Indices are 1-based to match sequence positions.
class counter_rng {
public:
  explicit counter_rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t n) const {
    return splitmix64(seed_ * 0xD1342543DE82EF95ULL + n);
  }

  /// Uniform double in [0,1) with 53 random mantissa bits.
  double uniform(std::uint64_t n) const {
    return static_cast<double>(bits(n) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
};

/// Small sequential helper for test sweeps; same core mixing function.
class sequential_rng {
public:
  explicit sequential_rng(std::uint64_t seed) : state_(seed), n_(0) {}

  std::uint64_t next_bits() { return splitmix64(state_ + ++n_ * 0x9E3779B97F4A7C15ULL); }
  double next_uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next_bits() % bound; }

private:
  std::uint64_t state_;
  std::uint64_t n_;
};

} // namespace sud
