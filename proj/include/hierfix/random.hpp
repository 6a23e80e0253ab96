#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hierfix {

/// Deterministic sub-seed for a named stochastic component. Stable across
/// platforms and runs (FNV-1a over the name, mixed with the parent seed).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view component) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : component) {
    h ^= c;
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer
  std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace hierfix
