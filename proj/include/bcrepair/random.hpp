#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bcrepair {

// All randomness in the simulator comes from std::mt19937_64, whose output
// sequence is fixed by the standard. Standard distributions are avoided since
// their algorithms are implementation-defined.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; derives independent per-trial seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, bound) by rejection sampling.
template <typename Engine>
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T, typename Engine>
void shuffle_in_place(std::vector<T>& v, Engine& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace bcrepair
