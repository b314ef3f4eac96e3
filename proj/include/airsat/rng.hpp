#pragma once

#include <cstdint>
#include <random>

namespace airsat {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent substream for (master seed, trial, lane). Pure function of its
// inputs, so simulation results do not depend on thread count or scheduling.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t trial,
                       std::uint64_t lane) {
  return Rng(mix64(master_seed ^ mix64(trial ^ mix64(lane))));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace airsat
