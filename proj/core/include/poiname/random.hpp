#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace poiname {

// std::mt19937_64 output is fixed by the standard; the distributions in
// <random> are not, so the helpers below are used instead of them wherever
// bit-reproducible output matters.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for a named substream ("embed", "decay", ...) of a run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Fisher-Yates shuffle driven by uniform_below.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_below(rng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace poiname
