#include "ssls/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssls/scoring.hpp"

namespace ssls {

double precision(std::span<const LocationId> s, std::span<const LocationId> s_exact) {
  if (s.size() != s_exact.size() || s.empty()) throw DomainError("precision needs two sets of the same non-zero size");
  std::vector<LocationId> a(s.begin(), s.end());
  std::vector<LocationId> b(s_exact.begin(), s_exact.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<LocationId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(s.size());
}

namespace {

// Smallest distance from any of friend v's sites to a member of S.
double friend_min(const QueryContext& ctx, std::size_t v, std::span<const int> s, MmdMode mode, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (int site : ctx.friend_sites[v])
    for (int m : s) {
      const double d = mode == MmdMode::kSpatial ? ctx.dist(site, m) : pair_diversity(ctx, site, m, alpha);
      best = std::min(best, d);
    }
  return best;
}

}  // namespace

double mmd(const QueryContext& ctx, std::span<const int> s, MmdMode mode, double alpha) {
  if (s.empty()) throw DomainError("mmd of an empty set");
  double sum = 0.0;
  for (std::size_t v = 0; v < ctx.friend_count(); ++v) sum += friend_min(ctx, v, s, mode, alpha);
  return sum / static_cast<double>(ctx.friend_count());
}

double social_coverage(const QueryContext& ctx, std::span<const int> s, double theta) {
  if (!(theta >= 0.0)) throw DomainError("theta must be non-negative");
  std::size_t covered = 0;
  for (std::size_t v = 0; v < ctx.friend_count(); ++v)
    if (friend_min(ctx, v, s, MmdMode::kSpatial, 0.0) <= theta) ++covered;
  return 100.0 * static_cast<double>(covered) / static_cast<double>(ctx.friend_count());
}

double social_entropy(const QueryContext& ctx, std::span<const int> s) {
  if (s.empty()) throw DomainError("entropy of an empty set");
  double total = 0.0;
  for (int l : s) total += static_cast<double>(ctx.visitors(l).size());
  if (total == 0.0) return 0.0;
  // Equal non-zero counts: uniform over those locations.
  std::size_t nonzero = 0;
  bool equal = true;
  for (int l : s) {
    const auto c = ctx.visitors(l).size();
    if (c == 0) continue;
    if (nonzero > 0 && c != ctx.visitors(s[0]).size()) equal = false;
    ++nonzero;
  }
  if (equal && nonzero == s.size()) return std::log2(static_cast<double>(nonzero));
  double h = 0.0;
  for (int l : s) {
    const double c = static_cast<double>(ctx.visitors(l).size());
    if (c == 0.0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return h;
}

bool entropy_degenerate(const QueryContext& ctx, std::span<const int> s) {
  return std::all_of(s.begin(), s.end(), [&](int l) { return ctx.visitors(l).empty(); });
}

}  // namespace ssls
