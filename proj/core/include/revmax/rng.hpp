// Deterministic random-number helpers. Every randomized routine in the
// library derives its stream from explicit 64-bit seeds through these
// functions, so identical seeds give bit-identical results on any platform.
#pragma once

#include <cstdint>
#include <random>

namespace revmax {

using Rng = std::mt19937_64;

// Finalizer from the splitmix64 generator; good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Combines seed components into one well-mixed seed (order-sensitive).
inline std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ull));
}
inline std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return seed_mix(seed_mix(a, b), c);
}

// Uniform double in [0, 1) using the top 53 bits; identical on every
// platform, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via masked rejection (n >= 1).
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t mask = ~0ull >> __builtin_clzll(n - 1);
  std::uint64_t r;
  do {
    r = rng() & mask;
  } while (r >= n);
  return r;
}

}  // namespace revmax
