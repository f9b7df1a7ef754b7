#pragma once

#include "ssls/types.hpp"

namespace ssls {

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance; Coord::x is latitude and Coord::y longitude, both in degrees.
double haversine_km(Coord a, Coord b);
double planar_distance(Coord a, Coord b);
/// Throws DomainError for the injected-matrix metric, which has no coordinate form.
double coord_distance(Metric metric, Coord a, Coord b);

}  // namespace ssls
