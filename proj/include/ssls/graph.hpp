#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssls/types.hpp"

namespace ssls {

struct Checkin {
  LocationId location = 0;
  std::string timestamp;  // may be empty
  friend bool operator==(const Checkin&, const Checkin&) = default;
};

/// Counters reported by the TSV loaders.
struct LoadReport {
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t self_loops_skipped = 0;
  std::size_t duplicates = 0;
};

/// Immutable social network plus check-ins. Safe to share between threads.
class SocioSpatialGraph {
 public:
  const std::vector<UserId>& users() const { return users_; }
  bool has_user(UserId u) const;
  /// Sorted friend list; empty for unknown users.
  const std::vector<UserId>& friends(UserId u) const;
  /// Check-ins in load order.
  const std::vector<Checkin>& checkins(UserId u) const;
  /// Sorted, deduplicated.
  std::vector<LocationId> distinct_locations(UserId u) const;

  bool has_location(LocationId id) const { return locations_.count(id) != 0; }
  const Coord& location(LocationId id) const;
  const std::map<LocationId, Coord>& locations() const { return locations_; }

  std::size_t edge_count() const { return edge_count_; }
  std::size_t checkin_count() const { return checkin_count_; }

  /// Versioned text snapshot. Doubles are written with 17 significant digits so a
  /// round trip is lossless.
  void write_snapshot(std::ostream& out) const;
  static SocioSpatialGraph read_snapshot(std::istream& in, const std::string& source);

  friend bool operator==(const SocioSpatialGraph&, const SocioSpatialGraph&) = default;

 private:
  friend class GraphBuilder;

  std::vector<UserId> users_;
  std::map<UserId, std::vector<UserId>> adjacency_;
  std::map<UserId, std::vector<Checkin>> checkins_;
  std::map<LocationId, Coord> locations_;
  std::size_t edge_count_ = 0;
  std::size_t checkin_count_ = 0;
};

class GraphBuilder {
 public:
  /// Max coordinate disagreement (degrees) tolerated for a repeated location id.
  static constexpr double kCoordTolerance = 1e-6;

  /// Lines are `userA<TAB>userB`. Edges are stored in both directions.
  LoadReport load_social_edges(std::istream& in, const std::string& source);
  /// Lines are `user<TAB>timestamp<TAB>lat<TAB>lon<TAB>locid`.
  LoadReport load_checkins(std::istream& in, const std::string& source);

  /// Returns false for self-loops and duplicates.
  bool add_edge(UserId a, UserId b);
  void add_user(UserId u);
  /// Throws DataError when `id` is already known at a different coordinate.
  void add_checkin(UserId u, LocationId id, Coord where, std::string timestamp = {});

  SocioSpatialGraph build() const;

 private:
  std::map<UserId, std::vector<UserId>> adjacency_;
  std::map<UserId, std::vector<Checkin>> checkins_;
  std::map<LocationId, Coord> locations_;
};

SocioSpatialGraph load_graph_files(const std::string& edges_path, const std::string& checkins_path,
                                   LoadReport* edges_report = nullptr,
                                   LoadReport* checkins_report = nullptr);
SocioSpatialGraph load_snapshot_file(const std::string& path);

/// Check-in groups by number of distinct locations.
inline constexpr int kGroupIds[] = {50, 100, 200, 500, 1000};
inline constexpr int kFilteredOut = 0;  // fewer than ten distinct locations
inline constexpr int kNoGroup = -1;     // more than 1000

int checkin_group_for_count(std::size_t distinct_locations);
int checkin_group(const SocioSpatialGraph& graph, UserId u);

/// Table-style dataset summary.
struct GraphStats {
  std::size_t users = 0;
  std::size_t edges = 0;
  std::size_t checkins = 0;
  std::size_t places = 0;
  double avg_checkins = 0.0;           // AC
  double avg_friends = 0.0;            // AF
  double avg_friend_cocheckins = 0.0;  // AFC
};

GraphStats compute_stats(const SocioSpatialGraph& graph);

}  // namespace ssls
