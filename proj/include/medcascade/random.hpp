#pragma once

// Portable random variates. The standard distributions are implementation
// defined, so every transform below is spelled out; together with
// std::mt19937_64 (fully specified by the standard) they make seeded output
// identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace medcascade::rng {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& engine, double lo, double hi) { return lo + (hi - lo) * uniform01(engine); }

/// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % n;
}

/// Exponential with the given rate, by inversion.
inline double exponential(Engine& engine, double rate) { return -std::log1p(-uniform01(engine)) / rate; }

/// Poisson by Knuth's product method. Intended for small means (< 30).
inline std::uint32_t poisson(Engine& engine, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  std::uint32_t k = 0;
  double product = uniform01(engine);
  while (product > limit) {
    ++k;
    product *= uniform01(engine);
  }
  return k;
}

}  // namespace medcascade::rng
