#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace olslab::rng {

// Fixed generator recipe so every seeded output is reproducible and
// portable: splitmix64 whitens (seed, a, b) into an mt19937_64 seed,
// uniforms take the top 53 bits, normals come from Box-Muller. None of the
// distributions rely on implementation-defined std:: behavior.
inline constexpr const char* kAlgorithmName =
    "splitmix64->mt19937_64 (53-bit uniforms, Box-Muller normals)";

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Independent stream for work item (a, b) under a master seed; distinct
/// keys give distinct streams, so parallel trials stay reproducible.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ (a + 0x9e3779b97f4a7c15ull);
  h = splitmix64(s);
  s = h ^ (b + 0xbf58476d1ce4e5b9ull);
  return std::mt19937_64(splitmix64(s));
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch only, stateless).
inline double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

inline double rademacher(std::mt19937_64& gen) {
  return (gen() & 1u) ? 1.0 : -1.0;
}

/// Uniform integer in [0, n), rejection-sampled (no modulo bias).
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

/// k distinct 1-based indices from {1..n}, ascending (partial
/// Fisher-Yates, then sorted).
inline std::vector<int> sample_indices(std::mt19937_64& gen, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  for (int i = 0; i < k; ++i) {
    const int j =
        i + static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace olslab::rng
