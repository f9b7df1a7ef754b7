#include "ssls/types.hpp"

#include <cmath>

namespace ssls {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kPlanarEuclidean: return "planar";
    case Metric::kHaversineKm: return "haversine";
    case Metric::kInjectedMatrix: return "matrix";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "planar" || name == "planar-euclidean") return Metric::kPlanarEuclidean;
  if (name == "haversine" || name == "haversine-km") return Metric::kHaversineKm;
  if (name == "matrix" || name == "injected-matrix") return Metric::kInjectedMatrix;
  throw DomainError("unknown metric '" + std::string(name) + "'");
}

void validate(const Params& params) {
  if (params.k < 1) throw DomainError("k must be positive");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  if (!(params.omega > 0.0 && params.omega < 1.0)) throw DomainError("omega must lie strictly inside (0,1)");
  if (!(params.theta >= 0.0) || std::isinf(params.theta)) throw DomainError("theta must be a finite non-negative number");
}

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

}  // namespace ssls
