#include "ssls/scoring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ssls {

double social_relevance(const QueryContext& ctx, int l) {
  return static_cast<double>(ctx.visitors(l).size()) / static_cast<double>(ctx.friend_count());
}

double spatial_relevance(const QueryContext& ctx, int l) {
  const double dm = ctx.d_m[static_cast<std::size_t>(l)];
  if (dm == 0.0) return 1.0;
  double sum = 0.0;
  for (std::size_t v = 0; v < ctx.friend_count(); ++v) sum += ctx.min_dist(l, static_cast<int>(v));
  return 1.0 - sum / (dm * static_cast<double>(ctx.friend_count()));
}

double relevance(const QueryContext& ctx, int l, double alpha) {
  return alpha * social_relevance(ctx, l) + (1.0 - alpha) * spatial_relevance(ctx, l);
}

double social_diversity(const QueryContext& ctx, int a, int b) {
  const auto& va = ctx.site_visitors[static_cast<std::size_t>(a)];
  const auto& vb = ctx.site_visitors[static_cast<std::size_t>(b)];
  if (va.empty() && vb.empty()) return 0.0;
  std::size_t common = 0;
  auto i = va.begin();
  auto j = vb.begin();
  while (i != va.end() && j != vb.end()) {
    if (*i == *j) {
      ++common;
      ++i;
      ++j;
    } else if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = va.size() + vb.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

double spatial_diversity(const QueryContext& ctx, int a, int b) {
  if (ctx.max_d == 0.0) return 0.0;
  return std::min(1.0, ctx.dist(a, b) / ctx.max_d);
}

double pair_diversity(const QueryContext& ctx, int a, int b, double alpha) {
  if (a == b) return 0.0;
  return alpha * social_diversity(ctx, a, b) + (1.0 - alpha) * spatial_diversity(ctx, a, b);
}

ScoreTable::ScoreTable(const QueryContext& ctx, double alpha) : ctx_(&ctx), alpha_(alpha) {
  const std::size_t n = ctx.size();
  ssc_.resize(n);
  ssp_.resize(n);
  rel_.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const int i = static_cast<int>(l);
    ssc_[l] = social_relevance(ctx, i);
    ssp_[l] = spatial_relevance(ctx, i);
    rel_[l] = alpha * ssc_[l] + (1.0 - alpha) * ssp_[l];
  }
  if (n <= kDenseLimit) {
    pairs_.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const double d = pair_diversity(ctx, static_cast<int>(a), static_cast<int>(b), alpha);
        pairs_[a * n + b] = d;
        pairs_[b * n + a] = d;
      }
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
    if (rel_[static_cast<std::size_t>(a)] != rel_[static_cast<std::size_t>(b)])
      return rel_[static_cast<std::size_t>(a)] > rel_[static_cast<std::size_t>(b)];
    return ctx.candidate(a) < ctx.candidate(b);
  });
}

double ScoreTable::diversity(int a, int b) const {
  if (!pairs_.empty()) return pairs_[static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b)];
  return pair_diversity(*ctx_, a, b, alpha_);
}

SetScore set_score(const ScoreTable& table, std::span<const int> members, double omega, std::uint64_t* pair_evals) {
  if (members.empty()) throw DomainError("set_score of an empty set");
  SetScore s;
  s.members.assign(members.begin(), members.end());
  s.min_div.assign(members.size(), 0.0);
  for (int l : members) s.relevance_sum += table.relevance(l);
  if (members.size() > 1) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < members.size(); ++j)
        if (i != j) best = std::min(best, table.diversity(members[i], members[j]));
      s.min_div[i] = best;
      s.diversity_sum += best;
    }
    if (pair_evals) *pair_evals += members.size() * (members.size() - 1);
  }
  s.total = omega * s.relevance_sum + (1.0 - omega) * s.diversity_sum;
  return s;
}

double canonical_score(const ScoreTable& table, std::vector<int> members, double omega) {
  std::sort(members.begin(), members.end());
  return set_score(table, members, omega).total;
}

double div_to_set(const ScoreTable& table, int l, std::span<const int> members, std::uint64_t* pair_evals) {
  if (members.empty()) throw DomainError("diversity to an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (int m : members) best = std::min(best, table.diversity(l, m));
  if (pair_evals) *pair_evals += members.size();
  return best;
}

DiversityUpdate updated_set_diversity(const ScoreTable& table, std::span<const int> members,
                                      std::span<const double> min_div, int added, std::uint64_t* pair_evals) {
  DiversityUpdate u;
  u.min_div.reserve(members.size() + 1);
  u.d_hat = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const double d = table.diversity(members[i], added);
    u.d_hat = std::min(u.d_hat, d);
    const double m = members.size() == 1 ? d : std::min(min_div[i], d);
    u.min_div.push_back(m);
    u.D_hat += m;
  }
  if (members.empty()) u.d_hat = 0.0;
  u.min_div.push_back(u.d_hat);
  if (pair_evals) *pair_evals += members.size();
  return u;
}

}  // namespace ssls
