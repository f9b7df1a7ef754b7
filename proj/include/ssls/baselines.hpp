#pragma once

#include <cstdint>

#include "ssls/result.hpp"

namespace ssls {

struct GneConfig {
  double pool_fraction = 0.25;
  int max_swap_rounds = 50;
  std::uint64_t rng_seed = 42;
};

struct SosConfig {
  double similarity_threshold = 0.4;
};

inline constexpr std::uint64_t kDefaultBruteCap = 2'000'000;

/// Number of k-subsets of n, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exhaustive maximum; throws DomainError when C(n, k) exceeds `cap`.
SelectionResult brute_force(const ScoreTable& table, const Params& params,
                            std::uint64_t cap = kDefaultBruteCap);
/// Greedy on the full marginal gain of F.
SelectionResult gmc(const ScoreTable& table, const Params& params);
/// Random seed set from the top pool, then improving swaps.
SelectionResult gne(const ScoreTable& table, const Params& params, const GneConfig& cfg = {});
/// Independent set on the visitor-similarity conflict graph, relevance order.
SelectionResult adaptive_sos(const ScoreTable& table, const Params& params, const SosConfig& cfg = {});

}  // namespace ssls
