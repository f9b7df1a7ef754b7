#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssls/config.hpp"
#include "ssls/graph.hpp"
#include "ssls/result.hpp"

namespace ssls {

inline constexpr const char* kAlgorithms[] = {"exact", "approx", "exactplus", "fast", "gmc", "gne", "sos", "brute"};

bool is_algorithm(const std::string& name);

/// Dispatches on the algorithm name.
SelectionResult run_algorithm(const std::string& algo, const ScoreTable& table, const Params& params,
                              const BaselineConfig& baselines = {}, std::uint64_t brute_cap = kDefaultBruteCap);

/// One JSON document per query. wall_ms is written as 0 unless `timing` is set,
/// so repeated runs are byte-identical.
std::string result_json(const QueryContext& ctx, const SelectionResult& result, const Params& params, bool timing);

/// FeatureCollection of the selected locations and the friends' check-ins.
std::string result_geojson(const QueryContext& ctx, const SelectionResult& result);

/// `locid,S_sc,S_sp,R_ss` per candidate, optionally followed by the D_ss matrix.
std::string scores_csv(const ScoreTable& table, bool with_pairs);

struct BenchOptions {
  int group = 50;
  std::vector<int> k_list{2, 4, 6, 8, 10};
  std::vector<std::string> algos{"exact", "approx", "exactplus", "fast", "gmc", "gne", "sos"};
  std::size_t sample = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  Params params;  // k is taken from k_list
  BaselineConfig baselines;
  std::uint64_t brute_cap = kDefaultBruteCap;
  bool timing = false;
};

struct BenchRow {
  std::string user;  // "mean" for aggregate rows
  std::string algo;
  int k = 0;
  double alpha = 0.0;
  double omega = 0.0;
  double f = 0.0;
  double precision = 0.0;
  double mmd_spatial = 0.0;
  double mmd_ss = 0.0;
  double sc_theta = 0.0;
  double se = 0.0;
  double wall_ms = 0.0;
};

/// Users of the group with at least two scoring friends, ascending.
std::vector<UserId> eligible_users(const SocioSpatialGraph& graph, int group);
/// Seeded sample of eligible users (ascending).
std::vector<UserId> sample_users(const SocioSpatialGraph& graph, int group, std::size_t sample, std::uint64_t seed);

/// Per-user rows sorted by (user, algo, k), then per-(algo, k) mean rows.
std::vector<BenchRow> run_bench(const SocioSpatialGraph& graph, const BenchOptions& opts);
std::string bench_csv(const std::vector<BenchRow>& rows);

std::string stats_text(const GraphStats& stats);

}  // namespace ssls
