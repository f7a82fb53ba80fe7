#pragma once

#include <cstdint>
#include <random>

namespace aitest {

// Samples are drawn in fixed-size chunks; chunk i of a run seeded with s
// always uses substream(s, i), so results do not depend on thread count or
// scheduling.
inline constexpr std::uint64_t kChunkSize = 1u << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform variate on (0, 1] with 53 random bits.
inline double uniform_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace aitest
