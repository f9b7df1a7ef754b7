#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ssls {

using UserId = std::int64_t;
using LocationId = std::int64_t;

/// Latitude/longitude in degrees, or planar x/y when the metric is planar.
struct Coord {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

enum class Metric { kPlanarEuclidean, kHaversineKm, kInjectedMatrix };

std::string_view to_string(Metric metric);
/// Accepts "planar", "haversine" and "matrix" (plus the long enum spellings).
Metric parse_metric(std::string_view name);

/// Query parameters shared by every solver.
struct Params {
  int k = 6;
  double alpha = 0.5;
  double omega = 0.5;
  double theta = 1.0;  // km (or fixture units); metrics only
  Metric metric = Metric::kHaversineKm;
  std::optional<std::uint64_t> max_states;  // node budget for the branch-and-bound solvers
};

/// Throws DomainError unless alpha in [0,1], omega in (0,1), theta >= 0 and k >= 1.
void validate(const Params& params);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The query user does not pass the eligibility filters (no check-ins, no scoring friends).
class IneligibleQueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ssls
