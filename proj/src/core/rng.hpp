#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sipkit {

using Rng = std::mt19937_64;

constexpr uint64_t splitmix64(uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for replica j of a run seeded with `seed`.
constexpr uint64_t replica_seed(uint64_t seed, uint64_t j) noexcept {
  return seed ^ splitmix64(j);
}

inline Rng make_rng(uint64_t seed) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
  return Rng(seq);
}

/// Uniform on (0, 1), never returning 0.
inline double uniform_open(Rng& rng) {
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(rng() >> 11) + 0.5) * scale;
}

inline double exponential(Rng& rng, double rate) { return -std::log(uniform_open(rng)) / rate; }

/// Number of worker threads: explicit request, else $SIPKIT_THREADS, else
/// hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

}  // namespace sipkit
