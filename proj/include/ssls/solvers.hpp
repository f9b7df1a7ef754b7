#pragma once

#include <span>
#include <vector>

#include "ssls/result.hpp"

namespace ssls {

struct ExactOptions {
  bool pruning = true;  // false explores every branch; used as a self-check
};

/// Best-first branch and bound; returns an optimal k-set.
SelectionResult solve_exact(const ScoreTable& table, const Params& params, const ExactOptions& opts = {});
/// Same search with the relaxed per-location threshold; not guaranteed optimal.
SelectionResult solve_approx(const ScoreTable& table, const Params& params);
/// Greedy extension from every root in relevance order.
SelectionResult solve_exact_plus(const ScoreTable& table, const Params& params);
/// The first two roots of solve_exact_plus.
SelectionResult solve_fast_approx(const ScoreTable& table, const Params& params);

// Bounds evaluated on an explicit state. S_R is the remaining list in relevance
// order; S_I the intermediate set.

/// Pre-feasible lower bound on D-hat: anything below it has non-positive gain.
/// Heuristic for fixed k; only the approximate solver applies it.
double d_hat_cap_lower_bound(const ScoreTable& table, std::span<const int> s_i,
                             std::span<const int> s_r, double omega);
/// Post-feasible lower bound on D-hat given the incumbent score.
double d_hat_post_lower_bound(const ScoreTable& table, std::span<const int> s_i,
                              std::span<const int> s_r, double best_score, const Params& params);
/// Per-location diversity threshold used by the approximate solver.
double d_lower_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                     double best_score, const Params& params);
/// D-hat of S_I after inserting `added`.
double d_hat(const ScoreTable& table, std::span<const int> s_i, int added);

/// Relevance threshold for the greedy step; l_ref is the front of S_R.
double relevance_lower_bound(const ScoreTable& table, std::span<const int> s_i,
                             std::span<const int> s_r, double omega);
/// Members of S_R whose relevance reaches `r_lower` (order kept).
std::vector<int> potential_locations(const ScoreTable& table, std::span<const int> s_r, double r_lower);
/// Upper bound on F over all k-supersets of S_I drawn from S_R.
double max_score_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                       const Params& params);
/// True iff best_score > max_score_bound(...).
bool advanced_termination(const ScoreTable& table, std::span<const int> s_i,
                          std::span<const int> s_r, double best_score, const Params& params);

}  // namespace ssls
