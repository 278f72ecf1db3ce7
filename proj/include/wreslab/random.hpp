#pragma once

// Seeded randomness for experiment batteries.
//
// Every trial draws from its own std::mt19937_64 stream seeded with
// splitmix64(seed ^ splitmix64(trial)), so a trial can be replayed from
// (seed, trial) alone and results do not depend on scheduling. Draws use
// modular reduction of raw 64-bit outputs rather than <random> distributions,
// whose output differs between standard libraries.

#include <cstdint>
#include <random>

namespace wreslab {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(seed ^ splitmix64(trial)));
}

/// Uniform integer in [lo, hi].
inline long uniform_int(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

/// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace wreslab
