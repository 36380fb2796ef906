#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace tigress::rng {

// Counter-based seed derivation. Every random quantity in the pipeline is a
// pure function of the user seed and a tuple of stable identifiers, so results
// do not depend on scheduling or on the order in which work is visited.

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// FNV-1a over the bytes of an identifier.
constexpr std::uint64_t hash_id(std::string_view id) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t derive(std::uint64_t seed) noexcept { return mix64(seed); }

template <typename... Rest>
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t first, Rest... rest) noexcept {
  return derive(mix64(seed ^ mix64(first)), rest...);
}

/// Maps 64 random bits to [0, 1) with 53 bits of resolution.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) by rejection; bound > 0.
template <typename Engine>
std::uint64_t bounded(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % bound;
}

/// In-place Fisher-Yates shuffle with a platform-independent index draw.
template <typename Engine, typename It>
void shuffle(It first, It last, Engine& engine) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = bounded(engine, i);
    std::iter_swap(first + (i - 1), first + j);
  }
}

/// Standard normal via Box-Muller, independent of the standard library's
/// distribution implementations.
template <typename Engine>
double normal(Engine& engine) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double u1 = to_unit(engine());
  while (u1 <= 0.0) u1 = to_unit(engine());
  const double u2 = to_unit(engine());
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

using Engine = std::mt19937_64;

}  // namespace tigress::rng
