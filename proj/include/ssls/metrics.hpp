#pragma once

#include <span>

#include "ssls/query_context.hpp"
#include "ssls/types.hpp"

namespace ssls {

enum class MmdMode { kSpatial, kSocioSpatial };

/// |S n S_exact| / k over location ids. Throws DomainError on a size mismatch.
double precision(std::span<const LocationId> s, std::span<const LocationId> s_exact);

/// Mean over friends of the smallest distance between any of their check-in
/// locations and a member of S. `alpha` only matters in socio-spatial mode.
double mmd(const QueryContext& ctx, std::span<const int> s, MmdMode mode, double alpha);

/// Percentage of friends with a check-in within `theta` of some member of S.
double social_coverage(const QueryContext& ctx, std::span<const int> s, double theta);

/// Entropy in bits of the visitor-count distribution over S; 0 when all counts are 0.
double social_entropy(const QueryContext& ctx, std::span<const int> s);
bool entropy_degenerate(const QueryContext& ctx, std::span<const int> s);

}  // namespace ssls
