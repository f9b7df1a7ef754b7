#include "ssls/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace ssls {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_query(const ScoreTable& table, const Params& params) {
  validate(params);
  if (static_cast<std::size_t>(params.k) > table.size())
    throw DomainError("k = " + std::to_string(params.k) + " exceeds the " + std::to_string(table.size()) + " candidates");
}

SelectionResult finish(const ScoreTable& table, const char* name, std::vector<int> members, const Params& p,
                       Telemetry tel, Clock::time_point start) {
  auto r = make_result(table, name, std::move(members), p.omega);
  tel.wall_ms = elapsed_ms(start);
  r.telemetry = std::move(tel);
  return r;
}

// Higher relevance first, then lower location id.
bool rank_before(const ScoreTable& table, int a, int b) {
  if (table.relevance(a) != table.relevance(b)) return table.relevance(a) > table.relevance(b);
  return table.context().candidate(a) < table.context().candidate(b);
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

SelectionResult brute_force(const ScoreTable& table, const Params& params, std::uint64_t cap) {
  check_query(table, params);
  const std::size_t n = table.size();
  const std::size_t k = static_cast<std::size_t>(params.k);
  const std::uint64_t total = binomial(n, k);
  if (total > cap)
    throw DomainError("brute force needs " + std::to_string(total) + " subsets, above the cap of " + std::to_string(cap));
  const auto start = Clock::now();
  Telemetry tel;

  // Candidates are stored by ascending id, so lexicographic index order is the
  // id order and the first maximum found wins ties.
  std::vector<int> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = static_cast<int>(i);
  std::vector<int> best;
  double best_f = -std::numeric_limits<double>::infinity();
  while (true) {
    const double f = set_score(table, comb, params.omega, &tel.pair_evals).total;
    ++tel.states_expanded;
    if (f > best_f) {
      best_f = f;
      best = comb;
    }
    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(comb[i - 1]) == n - k + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return finish(table, "brute", best, params, tel, start);
}

SelectionResult gmc(const ScoreTable& table, const Params& params) {
  check_query(table, params);
  const auto start = Clock::now();
  Telemetry tel;
  const std::size_t n = table.size();
  std::vector<int> chosen;
  std::vector<bool> used(n, false);
  double current = 0.0;
  while (chosen.size() < static_cast<std::size_t>(params.k)) {
    int best = -1;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      const int l = static_cast<int>(c);
      auto trial = chosen;
      trial.push_back(l);
      const double gain = set_score(table, trial, params.omega, &tel.pair_evals).total - current;
      if (best < 0 || gain > best_gain || (gain == best_gain && rank_before(table, l, best))) {
        best = l;
        best_gain = gain;
      }
    }
    chosen.push_back(best);
    used[static_cast<std::size_t>(best)] = true;
    current += best_gain;
    ++tel.greedy_steps;
  }
  return finish(table, "gmc", chosen, params, tel, start);
}

SelectionResult gne(const ScoreTable& table, const Params& params, const GneConfig& cfg) {
  check_query(table, params);
  if (!(cfg.pool_fraction > 0.0 && cfg.pool_fraction <= 1.0)) throw DomainError("pool_fraction must lie in (0,1]");
  if (cfg.max_swap_rounds < 0) throw DomainError("max_swap_rounds must be non-negative");
  const auto start = Clock::now();
  Telemetry tel;
  const std::size_t n = table.size();
  const std::size_t k = static_cast<std::size_t>(params.k);
  const auto& order = table.relevance_order();
  const std::size_t pool = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(cfg.pool_fraction * static_cast<double>(n) - 1e-9)), k, n);

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<int> candidates(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pool));
  // Partial Fisher-Yates: the first k entries become a uniform sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool - 1);
    std::swap(candidates[i], candidates[pick(rng)]);
  }
  std::vector<int> current(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<bool> in_set(n, false);
  for (int l : current) in_set[static_cast<std::size_t>(l)] = true;
  double f = set_score(table, current, params.omega, &tel.pair_evals).total;
  tel.score_trace.push_back(f);

  for (int round = 0; round < cfg.max_swap_rounds; ++round) {
    bool changed = false;
    for (std::size_t pos = 0; pos < k; ++pos) {
      // Most diverse outsider w.r.t. the current set.
      int outsider = -1;
      double best_div = -1.0;
      for (int l : order) {
        if (in_set[static_cast<std::size_t>(l)]) continue;
        const double d = div_to_set(table, l, current, &tel.pair_evals);
        if (d > best_div) {
          best_div = d;
          outsider = l;
        }
      }
      if (outsider < 0) break;
      auto trial = current;
      trial[pos] = outsider;
      const double g = set_score(table, trial, params.omega, &tel.pair_evals).total;
      if (g > f + 1e-12) {  // ignore rounding noise between member orders
        in_set[static_cast<std::size_t>(current[pos])] = false;
        in_set[static_cast<std::size_t>(outsider)] = true;
        current = std::move(trial);
        f = g;
        changed = true;
      }
    }
    ++tel.swap_rounds;
    tel.score_trace.push_back(f);
    if (!changed) break;
  }
  return finish(table, "gne", current, params, tel, start);
}

SelectionResult adaptive_sos(const ScoreTable& table, const Params& params, const SosConfig& cfg) {
  check_query(table, params);
  if (!(cfg.similarity_threshold >= 0.0 && cfg.similarity_threshold <= 1.0))
    throw DomainError("similarity_threshold must lie in [0,1]");
  const auto start = Clock::now();
  Telemetry tel;
  const auto& ctx = table.context();
  const std::size_t k = static_cast<std::size_t>(params.k);
  std::vector<int> chosen;
  std::vector<bool> used(table.size(), false);
  for (int l : table.relevance_order()) {
    if (chosen.size() == k) break;
    bool conflict = false;
    for (int s : chosen) {
      ++tel.pair_evals;
      if (1.0 - social_diversity(ctx, l, s) > cfg.similarity_threshold) {
        conflict = true;
        break;
      }
    }
    if (conflict) continue;
    chosen.push_back(l);
    used[static_cast<std::size_t>(l)] = true;
  }
  for (int l : table.relevance_order()) {
    if (chosen.size() == k) break;
    if (used[static_cast<std::size_t>(l)]) continue;
    chosen.push_back(l);
    used[static_cast<std::size_t>(l)] = true;
    tel.relaxed = true;
  }
  return finish(table, "sos", chosen, params, tel, start);
}

}  // namespace ssls
