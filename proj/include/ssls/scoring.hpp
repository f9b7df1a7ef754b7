#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ssls/query_context.hpp"

namespace ssls {

// Direct formulas over a context. Indices are candidate indices.
double social_relevance(const QueryContext& ctx, int l);
double spatial_relevance(const QueryContext& ctx, int l);
double relevance(const QueryContext& ctx, int l, double alpha);
/// Jaccard distance of the visitor sets; 0 when both are empty. Works for any site.
double social_diversity(const QueryContext& ctx, int a, int b);
/// dist / max_d, or 0 when max_d is 0. Works for any site.
double spatial_diversity(const QueryContext& ctx, int a, int b);
double pair_diversity(const QueryContext& ctx, int a, int b, double alpha);

/// Relevance per candidate plus pairwise diversity. The full pair matrix is
/// precomputed for up to kDenseLimit candidates, otherwise pairs are evaluated
/// on demand. Read-only after construction.
class ScoreTable {
 public:
  static constexpr std::size_t kDenseLimit = 2048;

  ScoreTable(const QueryContext& ctx, double alpha);

  const QueryContext& context() const { return *ctx_; }
  std::size_t size() const { return rel_.size(); }
  double alpha() const { return alpha_; }

  double social(int l) const { return ssc_[static_cast<std::size_t>(l)]; }
  double spatial(int l) const { return ssp_[static_cast<std::size_t>(l)]; }
  double relevance(int l) const { return rel_[static_cast<std::size_t>(l)]; }
  double diversity(int a, int b) const;

  /// Candidate indices by relevance descending, ties by ascending location id.
  const std::vector<int>& relevance_order() const { return order_; }

 private:
  const QueryContext* ctx_;
  double alpha_;
  std::vector<double> ssc_, ssp_, rel_;
  std::vector<double> pairs_;
  std::vector<int> order_;
};

/// Score breakdown of a set. `members` keeps the caller's order.
struct SetScore {
  std::vector<int> members;
  double relevance_sum = 0.0;
  double diversity_sum = 0.0;
  std::vector<double> min_div;  // D(l, S \ l) per member; all 0 for a singleton
  double total = 0.0;
};

/// Pair evaluations are added to `pair_evals` when it is non-null.
SetScore set_score(const ScoreTable& table, std::span<const int> members, double omega,
                   std::uint64_t* pair_evals = nullptr);
/// F of the sorted member list; the canonical value every solver reports.
double canonical_score(const ScoreTable& table, std::vector<int> members, double omega);

/// min over S of D(l, s). Throws DomainError when S is empty.
double div_to_set(const ScoreTable& table, int l, std::span<const int> members,
                  std::uint64_t* pair_evals = nullptr);

struct DiversityUpdate {
  double d_hat = 0.0;            // D(l', S)
  double D_hat = 0.0;            // sum over S of min{D(l, S\l), D(l, l')}
  std::vector<double> min_div;   // new per-member mins, l' last
};

/// Incremental diversity of S + l'. For a singleton S the lone member has no
/// partner yet, so its new minimum is simply D(l, l').
DiversityUpdate updated_set_diversity(const ScoreTable& table, std::span<const int> members,
                                      std::span<const double> min_div, int added,
                                      std::uint64_t* pair_evals = nullptr);

}  // namespace ssls
