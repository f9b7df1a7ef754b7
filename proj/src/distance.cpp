#include "ssls/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ssls {

double haversine_km(Coord a, Coord b) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (b.x - a.x) * kRad;
  const double dlon = (b.y - a.y) * kRad;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.x * kRad) * std::cos(b.x * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(s)));
}

double planar_distance(Coord a, Coord b) { return std::hypot(a.x - b.x, a.y - b.y); }

double coord_distance(Metric metric, Coord a, Coord b) {
  switch (metric) {
    case Metric::kPlanarEuclidean: return planar_distance(a, b);
    case Metric::kHaversineKm: return haversine_km(a, b);
    case Metric::kInjectedMatrix: break;
  }
  throw DomainError("injected-matrix metric has no coordinate distance");
}

}  // namespace ssls
