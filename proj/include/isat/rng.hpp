#pragma once

#include <cstdint>
#include <random>

namespace isat {

using Rng = std::mt19937_64;

/// splitmix64 finalizer. Constants are the published splitmix64 multipliers.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derive the seed of independent stream `index` from a master seed.
/// split(seed, i) = mix64(mix64(seed) ^ mix64(i + 1)).
[[nodiscard]] constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 1));
}

[[nodiscard]] inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(split_seed(seed, index));
}

[[nodiscard]] inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace isat
