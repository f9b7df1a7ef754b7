#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "ssls/graph.hpp"
#include "ssls/types.hpp"

namespace ssls {

/// Per-user view consumed by every scorer and solver.
///
/// Sites are every location that matters to the query: the first `size()` sites
/// are the candidates (ascending id), followed by the other locations visited by
/// scoring friends. Solvers only ever touch candidate indices.
struct QueryContext {
  UserId query_user = 0;
  Metric metric = Metric::kPlanarEuclidean;

  std::vector<LocationId> sites;
  std::vector<Coord> site_coords;                 // empty for the injected metric
  std::vector<std::vector<int>> site_visitors;    // sorted friend indices per site
  std::vector<UserId> friends;                    // V_u, sorted
  std::vector<std::vector<int>> friend_sites;     // sorted site indices per friend
  std::vector<double> matrix;                     // candidates x candidates, injected only

  std::size_t candidate_count = 0;
  std::vector<double> mindist;  // candidate_count x friends, row major
  std::vector<double> d_m;      // per candidate
  double max_d = 0.0;

  std::vector<std::string> site_labels;    // optional display names
  std::vector<std::string> friend_labels;  // optional display names

  std::size_t size() const { return candidate_count; }
  std::size_t friend_count() const { return friends.size(); }
  LocationId candidate(int i) const { return sites[static_cast<std::size_t>(i)]; }
  const std::vector<int>& visitors(int i) const { return site_visitors[static_cast<std::size_t>(i)]; }
  double min_dist(int candidate, int friend_index) const {
    return mindist[static_cast<std::size_t>(candidate) * friends.size() + static_cast<std::size_t>(friend_index)];
  }
  /// Distance between two sites in the active metric.
  double dist(int a, int b) const;
  /// Candidate index for a location id, or -1.
  int index_of(LocationId id) const;
  /// Display label of a site (falls back to the numeric id).
  std::string label(int site) const;

  /// Recomputes mindist, d_m and max_d from the site tables.
  void compute_normalizers();
  /// Throws DataError if an invariant does not hold.
  void check_invariants() const;
};

/// Context for user `u`. Candidates are u's distinct check-in locations and the
/// scoring friends are the friends with at least one check-in.
QueryContext build_query_context(const SocioSpatialGraph& graph, UserId u, Metric metric);

/// Reads the small fixture format (`fixture_version: 1`, candidates, friends,
/// distance_matrix, visitor_sets). Candidate and friend ids are their 1-based positions.
QueryContext load_toy_fixture(std::istream& in, const std::string& source = "<fixture>");
QueryContext load_toy_fixture_file(const std::string& path);

}  // namespace ssls
