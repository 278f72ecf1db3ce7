#pragma once

// Seeded verification batteries. Each trial draws from trial_rng(seed, trial), trials
// run on the OpenMP pool, and the report lists trials in index order, so a report is
// a pure function of the configuration (byte-identical in exact mode).
//
//   trace   wres([a, b]) = 0 for random symbol pairs
//   prop1   residue traces of idempotent jets depend only on the class mod L^{-1}
//   vanish  wres of projection lifts is 0, and equal for differently perturbed lifts
//   cocycle structure of sampled transition data on quaternionic nerves
//   frames  the residue density is unchanged by change_of_frame

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "wreslab/parallel.hpp"

namespace wreslab {

struct SuiteConfig {
  std::string name;
  std::string mode = "exact";  // exact | f64
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::optional<int> k;
  std::optional<int> depth;
  /// Jet length N for prop1.
  std::optional<int> levels;
  int nodes = 128;
  parallel::Execution execution = parallel::Execution::omp;
};

struct SuiteReport {
  nlohmann::json report;
  bool passed = false;
};

/// Throws UsageError for an unknown suite or invalid configuration.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace wreslab
