#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nslen {

// All randomness in the library flows through explicitly seeded mt19937_64
// engines. std::uniform_int_distribution is implementation-defined, so
// bounded draws use portable rejection sampling instead; identical seeds
// give identical streams on every platform.

using Rng = std::mt19937_64;

/// Unbiased uniform draw from [0, n). n must be > 0.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

/// FNV-1a over a string, for deriving stable per-task sub-seeds.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Deterministically derive an independent sub-seed from a base seed and tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = fnv1a(tag) ^ (seed + 0x9e3779b97f4a7c15ull);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

} // namespace nslen
