#pragma once

#include <cstdint>
#include <iosfwd>

#include "ssls/graph.hpp"
#include "ssls/query_context.hpp"

namespace ssls {

/// Random planar context: candidates and friend-only sites scattered in a square.
struct SyntheticContextSpec {
  int candidates = 10;
  int friends = 6;
  int extra_sites = 6;
  double visit_probability = 0.3;
  double extent = 100.0;
};

QueryContext synthetic_context(const SyntheticContextSpec& spec, std::uint64_t seed);

/// Random lat/lon network with clustered check-ins and friends who share places.
struct SyntheticGraphSpec {
  int users = 200;
  int average_degree = 8;
  int places = 3000;
  int min_places_per_user = 3;
  int max_places_per_user = 120;
  double share_probability = 0.4;  // chance a check-in reuses a friend's place
};

SocioSpatialGraph synthetic_graph(const SyntheticGraphSpec& spec, std::uint64_t seed);

/// Writes the two SNAP-style TSV files that GraphBuilder reads.
void write_graph_tsv(const SocioSpatialGraph& graph, std::ostream& edges, std::ostream& checkins);

}  // namespace ssls
