#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssls/scoring.hpp"

namespace ssls {

struct Telemetry {
  std::uint64_t states_expanded = 0;
  std::uint64_t pruned_property1 = 0;
  std::uint64_t pruned_property2 = 0;
  std::uint64_t pruned_relaxed = 0;  // approximate solver's per-location threshold
  std::uint64_t terminated_branches = 0;
  std::uint64_t d_hat_evals = 0;
  std::uint64_t pair_evals = 0;
  std::uint64_t roots_total = 0;
  std::uint64_t roots_terminated = 0;
  std::uint64_t greedy_steps = 0;
  std::uint64_t swap_rounds = 0;
  bool exhausted = false;  // node budget hit before the search finished
  bool relaxed = false;    // Adaptive-SOS had to fill past the conflict graph
  double wall_ms = 0.0;
  std::vector<double> score_trace;  // GNE: F after seeding and after each round
};

struct SelectionResult {
  std::string algo;
  std::vector<int> members;             // candidate indices, ascending
  std::vector<LocationId> locations;    // matching location ids
  SetScore score;
  Telemetry telemetry;
};

/// Fills members/locations/score from an unordered index set.
SelectionResult make_result(const ScoreTable& table, std::string algo, std::vector<int> members,
                            double omega);

/// True when `a` precedes `b` under the incumbent tie-break (smaller sorted ids).
bool lexicographically_smaller(const ScoreTable& table, std::vector<int> a, std::vector<int> b);

}  // namespace ssls
