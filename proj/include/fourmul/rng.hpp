#pragma once

#include <cstdint>

#include "fourmul/field.hpp"

namespace fourmul {

/// splitmix64 finalizer. Used everywhere randomness or seed derivation is
/// needed so that runs are reproducible bit-for-bit across platforms.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seed for trial i of a simulation seeded with `seed`:
/// mix64(seed + (i+1) * golden), the documented derivation rule.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + (i + 1) * 0x9e3779b97f4a7c15ull);
}

/// splitmix64 stream. Bounded draws use rejection sampling, never a
/// distribution object, so sequences are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  FieldElement element(const Fp& f) { return f(below(f.p())); }
  FieldElement nonzero_element(const Fp& f) { return f(1 + below(f.p() - 1)); }

 private:
  std::uint64_t state_;
};

}  // namespace fourmul
