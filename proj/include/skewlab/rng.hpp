#pragma once

#include <cstdint>
#include <random>

#include "skewlab/torus.hpp"

namespace skewlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent reproducible engine for (seed, stream). Parallel work derives
// one stream per shard index, so results do not depend on the thread count.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x632be59bd9b4e019ull * (stream + 1));
  const std::uint64_t a = splitmix64(s), b = splitmix64(s), c = splitmix64(s),
                      d = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
  return std::mt19937_64(seq);
}

inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline Point3 random_point3(std::mt19937_64& g) {
  return {uniform01(g), uniform01(g), uniform01(g)};
}

}  // namespace skewlab
