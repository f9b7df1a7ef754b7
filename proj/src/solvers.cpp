#include "ssls/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace ssls {
namespace {

// Slack applied so that rounding never prunes or terminates a tied branch.
constexpr double kEps = 1e-9;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_query(const ScoreTable& table, const Params& params) {
  validate(params);
  if (static_cast<std::size_t>(params.k) > table.size())
    throw DomainError("k = " + std::to_string(params.k) + " exceeds the " + std::to_string(table.size()) + " candidates");
}

struct Incumbent {
  bool has = false;
  double score = 0.0;
  std::vector<int> members;

  // True when `s` strictly improves the score.
  bool offer(const ScoreTable& table, const std::vector<int>& s, double omega) {
    const double f = canonical_score(table, s, omega);
    if (!has || f > score) {
      has = true;
      score = f;
      members = s;
      return true;
    }
    if (f == score && lexicographically_smaller(table, s, members)) members = s;
    return false;
  }
};

// S_I with its score pieces, plus S_R (relevance order) and D(l, S_I) per entry of S_R.
struct Node {
  std::vector<int> s_i;
  std::vector<double> min_div;
  double rel_sum = 0.0;
  double div_sum = 0.0;
  double score = 0.0;
  std::vector<int> s_r;
  std::vector<double> dhat;
  std::uint64_t seq = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.score != b.score) return a.score < b.score;
    if (a.s_i.size() != b.s_i.size()) return a.s_i.size() < b.s_i.size();
    return a.seq > b.seq;
  }
};

void erase_at(Node& n, std::size_t j) {
  n.s_r.erase(n.s_r.begin() + static_cast<std::ptrdiff_t>(j));
  if (!n.dhat.empty()) n.dhat.erase(n.dhat.begin() + static_cast<std::ptrdiff_t>(j));
}

void append(Node& n, int l, const ScoreTable& table, double omega, Telemetry& tel) {
  if (n.s_i.empty()) {
    n.min_div = {0.0};
    n.div_sum = 0.0;
    n.dhat.resize(n.s_r.size());
    for (std::size_t j = 0; j < n.s_r.size(); ++j) n.dhat[j] = table.diversity(l, n.s_r[j]);
  } else {
    auto up = updated_set_diversity(table, n.s_i, n.min_div, l, &tel.pair_evals);
    n.min_div = std::move(up.min_div);
    n.div_sum = up.d_hat + up.D_hat;
    for (std::size_t j = 0; j < n.s_r.size(); ++j) n.dhat[j] = std::min(n.dhat[j], table.diversity(l, n.s_r[j]));
  }
  tel.pair_evals += n.s_r.size();
  n.s_i.push_back(l);
  n.rel_sum += table.relevance(l);
  n.score = omega * n.rel_sum + (1.0 - omega) * n.div_sum;
}

// D-hat for the entry of S_R at j. A singleton's lone member has no partner, so
// its new minimum is the pair value itself.
double node_d_hat(const Node& n, std::size_t j, const ScoreTable& table, Telemetry& tel) {
  ++tel.d_hat_evals;
  if (n.s_i.size() == 1) return n.dhat[j];
  double sum = 0.0;
  for (std::size_t i = 0; i < n.s_i.size(); ++i) sum += std::min(n.min_div[i], table.diversity(n.s_i[i], n.s_r[j]));
  tel.pair_evals += n.s_i.size();
  return sum;
}

double top_relevance(const ScoreTable& table, const std::vector<int>& s_r, std::size_t count) {
  double sum = 0.0;
  for (std::size_t j = 0; j < std::min(count, s_r.size()); ++j) sum += table.relevance(s_r[j]);
  return sum;
}

double top_values(std::vector<double> values, std::size_t count) {
  count = std::min(count, values.size());
  std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(count), values.end(),
                    std::greater<>());
  return std::accumulate(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(count), 0.0);
}

double max_value(const std::vector<double>& values) {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

template <typename Drop>
std::uint64_t filter_remaining(Node& n, Drop&& drop) {
  std::vector<int> keep_r;
  std::vector<double> keep_d;
  for (std::size_t j = 0; j < n.s_r.size(); ++j) {
    if (drop(j)) continue;
    keep_r.push_back(n.s_r[j]);
    keep_d.push_back(n.dhat[j]);
  }
  const std::uint64_t dropped = n.s_r.size() - keep_r.size();
  n.s_r = std::move(keep_r);
  n.dhat = std::move(keep_d);
  return dropped;
}

void prune_pre_feasible(Node& n, const ScoreTable& table, double omega, Telemetry& tel) {
  // A singleton has zero diversity, so the bound is negative and cannot prune.
  if (n.s_i.size() < 2) return;
  const double low = n.div_sum - max_value(n.dhat) - omega / (1.0 - omega) * table.relevance(n.s_r.front());
  if (low <= kEps) return;
  tel.pruned_property1 += filter_remaining(n, [&](std::size_t j) { return node_d_hat(n, j, table, tel) < low - kEps; });
}

void prune_post_feasible(Node& n, const ScoreTable& table, const Params& p, double best, Telemetry& tel) {
  const std::size_t need = static_cast<std::size_t>(p.k) - n.s_i.size();
  if (n.s_r.size() < need) return;
  const double low = (best - p.omega * (n.rel_sum + top_relevance(table, n.s_r, need))) / (1.0 - p.omega) -
                     top_values(n.dhat, need);
  if (low <= kEps) return;
  tel.pruned_property2 += filter_remaining(n, [&](std::size_t j) { return node_d_hat(n, j, table, tel) < low - kEps; });
}

// Returns true when the whole branch is dropped.
bool prune_relaxed(Node& n, const ScoreTable& table, const Params& p, double best, Telemetry& tel) {
  const std::size_t need = static_cast<std::size_t>(p.k) - n.s_i.size();
  if (n.s_r.size() < need) return false;
  const double thr = (best - n.score - p.omega * top_relevance(table, n.s_r, need)) /
                     ((1.0 - p.omega) * static_cast<double>(need));
  tel.d_hat_evals += n.s_r.size();
  const bool all_below = std::all_of(n.dhat.begin(), n.dhat.end(), [&](double d) { return d <= thr; });
  if (all_below) {
    ++tel.terminated_branches;
    n.s_r.clear();
    n.dhat.clear();
    return true;
  }
  tel.pruned_relaxed += filter_remaining(n, [&](std::size_t j) { return n.dhat[j] <= thr; });
  return false;
}

enum class Mode { kExact, kApprox };

SelectionResult branch_and_bound(const ScoreTable& table, const Params& p, Mode mode, bool pruning,
                                 const char* name) {
  check_query(table, p);
  const auto start = Clock::now();
  Telemetry tel;
  Incumbent inc;
  const std::size_t k = static_cast<std::size_t>(p.k);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  std::uint64_t seq = 0;
  Node root;
  root.s_r = table.relevance_order();
  root.seq = seq++;
  queue.push(std::move(root));

  while (!queue.empty()) {
    Node n = queue.top();
    queue.pop();
    if (n.s_i.size() == k || n.s_r.empty()) continue;
    if (p.max_states && tel.states_expanded >= *p.max_states) {
      tel.exhausted = true;
      break;
    }
    ++tel.states_expanded;
    while (n.s_i.size() < k && n.s_i.size() + n.s_r.size() >= k) {
      const int l = n.s_r.front();
      erase_at(n, 0);
      if (n.s_i.size() + n.s_r.size() >= k && !n.s_r.empty()) {
        Node sibling = n;
        sibling.seq = seq++;
        queue.push(std::move(sibling));
      }
      append(n, l, table, p.omega, tel);
      if (pruning && n.s_i.size() < k && !n.s_r.empty()) {
        if (!inc.has) {
          // Dropping non-positive gains can discard members of the optimal
          // k-set, so only the approximate search uses it.
          if (mode == Mode::kApprox) prune_pre_feasible(n, table, p.omega, tel);
        } else if (mode == Mode::kApprox && n.s_i.size() >= 2) {
          if (prune_relaxed(n, table, p, inc.score, tel)) break;
        } else {
          prune_post_feasible(n, table, p, inc.score, tel);
        }
      }
      if (n.s_i.size() == k && inc.offer(table, n.s_i, p.omega)) break;
    }
  }
  auto r = make_result(table, name, inc.members, p.omega);
  tel.wall_ms = elapsed_ms(start);
  r.telemetry = std::move(tel);
  return r;
}

SelectionResult greedy_roots(const ScoreTable& table, const Params& p, std::size_t max_roots, const char* name) {
  check_query(table, p);
  const auto start = Clock::now();
  Telemetry tel;
  Incumbent inc;
  const std::size_t k = static_cast<std::size_t>(p.k);
  const double c = (1.0 - p.omega) / p.omega;
  const auto& order = table.relevance_order();

  for (std::size_t r = 0; r < order.size() && r < max_roots; ++r) {
    ++tel.roots_total;
    Node n;
    n.s_r.assign(order.begin() + static_cast<std::ptrdiff_t>(r) + 1, order.end());
    append(n, order[r], table, p.omega, tel);

    while (n.s_i.size() < k && n.s_i.size() + n.s_r.size() >= k) {
      const std::size_t need = k - n.s_i.size();
      const double d_max = max_value(n.dhat);
      if (inc.has) {
        const double f_max = n.score + p.omega * top_relevance(table, n.s_r, need) +
                             (1.0 - p.omega) * (top_values(n.dhat, need) + (n.s_i.size() == 1 ? d_max : 0.0));
        if (inc.score > f_max + kEps) {
          ++tel.roots_terminated;
          break;
        }
      }
      // l_ref is the front of S_R.
      const double ref_d_hat = node_d_hat(n, 0, table, tel);
      const double r_lower =
          n.s_i.size() == 1 ? table.relevance(n.s_r[0]) + c * (n.dhat[0] - d_max)
                            : table.relevance(n.s_r[0]) + c * (n.dhat[0] + ref_d_hat - n.div_sum - d_max);

      std::size_t best_j = 0;
      double best_f = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n.s_r.size(); ++j) {
        const int l = n.s_r[j];
        if (table.relevance(l) < r_lower - kEps) continue;
        const double dh = j == 0 ? ref_d_hat : node_d_hat(n, j, table, tel);
        const double f = p.omega * (n.rel_sum + table.relevance(l)) + (1.0 - p.omega) * (n.dhat[j] + dh);
        const int b = n.s_r[best_j];
        const bool better = f > best_f ||
                            (f == best_f && (table.relevance(l) > table.relevance(b) ||
                                             (table.relevance(l) == table.relevance(b) &&
                                              table.context().candidate(l) < table.context().candidate(b))));
        if (better) {
          best_f = f;
          best_j = j;
        }
      }
      const int top = n.s_r[best_j];
      erase_at(n, best_j);
      append(n, top, table, p.omega, tel);
      ++tel.greedy_steps;
    }
    if (n.s_i.size() == k) inc.offer(table, n.s_i, p.omega);
  }
  auto res = make_result(table, name, inc.members, p.omega);
  tel.wall_ms = elapsed_ms(start);
  res.telemetry = std::move(tel);
  return res;
}

std::vector<double> to_set_div(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r) {
  std::vector<double> out;
  for (int l : s_r) out.push_back(div_to_set(table, l, s_i));
  return out;
}

double sorted_top_relevance(const ScoreTable& table, std::span<const int> s_r, std::size_t count) {
  std::vector<double> rel;
  for (int l : s_r) rel.push_back(table.relevance(l));
  return top_values(std::move(rel), count);
}

int reference_location(const ScoreTable& table, std::span<const int> s_r) {
  int ref = s_r.front();
  for (int l : s_r)
    if (table.relevance(l) > table.relevance(ref)) ref = l;
  return ref;
}

}  // namespace

SelectionResult solve_exact(const ScoreTable& table, const Params& params, const ExactOptions& opts) {
  return branch_and_bound(table, params, Mode::kExact, opts.pruning, "exact");
}

SelectionResult solve_approx(const ScoreTable& table, const Params& params) {
  return branch_and_bound(table, params, Mode::kApprox, true, "approx");
}

SelectionResult solve_exact_plus(const ScoreTable& table, const Params& params) {
  return greedy_roots(table, params, std::numeric_limits<std::size_t>::max(), "exactplus");
}

SelectionResult solve_fast_approx(const ScoreTable& table, const Params& params) {
  return greedy_roots(table, params, 2, "fast");
}

double d_hat(const ScoreTable& table, std::span<const int> s_i, int added) {
  const auto base = set_score(table, s_i, 0.5);
  return updated_set_diversity(table, s_i, base.min_div, added).D_hat;
}

double d_hat_cap_lower_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                             double omega) {
  const double set_div = set_score(table, s_i, omega).diversity_sum;
  return set_div - max_value(to_set_div(table, s_i, s_r)) - omega / (1.0 - omega) * sorted_top_relevance(table, s_r, 1);
}

double d_hat_post_lower_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                              double best_score, const Params& params) {
  const std::size_t need = static_cast<std::size_t>(params.k) - s_i.size();
  const double rel = set_score(table, s_i, params.omega).relevance_sum;
  return (best_score - params.omega * (rel + sorted_top_relevance(table, s_r, need))) / (1.0 - params.omega) -
         top_values(to_set_div(table, s_i, s_r), need);
}

double d_lower_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r, double best_score,
                     const Params& params) {
  const std::size_t need = static_cast<std::size_t>(params.k) - s_i.size();
  const double f = set_score(table, s_i, params.omega).total;
  return (best_score - f - params.omega * sorted_top_relevance(table, s_r, need)) /
         ((1.0 - params.omega) * static_cast<double>(need));
}

double relevance_lower_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                             double omega) {
  const int ref = reference_location(table, s_r);
  const double c = (1.0 - omega) / omega;
  const double d_max = max_value(to_set_div(table, s_i, s_r));
  const double ref_div = div_to_set(table, ref, s_i);
  if (s_i.size() == 1) return table.relevance(ref) + c * (ref_div - d_max);
  const double base = set_score(table, s_i, omega).diversity_sum;
  return table.relevance(ref) + c * (ref_div + d_hat(table, s_i, ref) - base - d_max);
}

std::vector<int> potential_locations(const ScoreTable& table, std::span<const int> s_r, double r_lower) {
  std::vector<int> out;
  for (int l : s_r)
    if (table.relevance(l) >= r_lower - kEps) out.push_back(l);
  return out;
}

double max_score_bound(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                       const Params& params) {
  const std::size_t need = static_cast<std::size_t>(params.k) - s_i.size();
  const auto divs = to_set_div(table, s_i, s_r);
  const double f = set_score(table, s_i, params.omega).total;
  return f + params.omega * sorted_top_relevance(table, s_r, need) +
         (1.0 - params.omega) * (top_values(divs, need) + (s_i.size() == 1 ? max_value(divs) : 0.0));
}

bool advanced_termination(const ScoreTable& table, std::span<const int> s_i, std::span<const int> s_r,
                          double best_score, const Params& params) {
  if (best_score <= 0.0) return false;
  return best_score > max_score_bound(table, s_i, s_r, params) + kEps;
}

}  // namespace ssls
