#pragma once

#include <cstdint>
#include <string_view>

namespace omffm {

// xoshiro256++ seeded through splitmix64. Hand-rolled instead of <random>
// engines because distribution output must be identical across standard
// library implementations for the reproducibility contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t s_[4];
};

// Stable seed derivation for independent streams (per start, per cell, ...).
std::uint64_t hash_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

}  // namespace omffm
