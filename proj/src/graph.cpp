#include "ssls/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

namespace ssls {
namespace {

const std::vector<UserId> kNoFriends;
const std::vector<Checkin> kNoCheckins;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool SocioSpatialGraph::has_user(UserId u) const {
  return std::binary_search(users_.begin(), users_.end(), u);
}

const std::vector<UserId>& SocioSpatialGraph::friends(UserId u) const {
  const auto it = adjacency_.find(u);
  return it == adjacency_.end() ? kNoFriends : it->second;
}

const std::vector<Checkin>& SocioSpatialGraph::checkins(UserId u) const {
  const auto it = checkins_.find(u);
  return it == checkins_.end() ? kNoCheckins : it->second;
}

std::vector<LocationId> SocioSpatialGraph::distinct_locations(UserId u) const {
  std::vector<LocationId> out;
  for (const auto& c : checkins(u)) out.push_back(c.location);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const Coord& SocioSpatialGraph::location(LocationId id) const {
  const auto it = locations_.find(id);
  if (it == locations_.end()) throw NotFoundError("unknown location " + std::to_string(id));
  return it->second;
}

void SocioSpatialGraph::write_snapshot(std::ostream& out) const {
  out << "ssls-snapshot 1\n";
  out << "users " << users_.size() << "\n";
  for (UserId u : users_) out << u << "\n";
  out << "edges " << edge_count_ << "\n";
  for (const auto& [u, adj] : adjacency_)
    for (UserId v : adj)
      if (u < v) out << u << "\t" << v << "\n";
  out << "locations " << locations_.size() << "\n";
  for (const auto& [id, c] : locations_) out << id << "\t" << fmt_double(c.x) << "\t" << fmt_double(c.y) << "\n";
  out << "checkins " << checkin_count_ << "\n";
  for (const auto& [u, list] : checkins_)
    for (const auto& c : list) out << u << "\t" << c.location << "\t" << c.timestamp << "\n";
}

SocioSpatialGraph SocioSpatialGraph::read_snapshot(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> std::string_view {
    if (!std::getline(in, line)) throw ParseError(source, lineno + 1, "unexpected end of snapshot");
    ++lineno;
    return trim(line);
  };
  auto section = [&](std::string_view name) {
    const auto text = next();
    const auto space = text.find(' ');
    std::size_t count = 0;
    if (space == std::string_view::npos || text.substr(0, space) != name ||
        !parse_number(text.substr(space + 1), count))
      throw ParseError(source, lineno, "expected '" + std::string(name) + " <count>'");
    return count;
  };

  if (next() != "ssls-snapshot 1") throw ParseError(source, lineno, "not a version 1 snapshot");
  GraphBuilder b;
  const std::size_t n_users = section("users");
  for (std::size_t i = 0; i < n_users; ++i) {
    UserId u = 0;
    if (!parse_number(next(), u)) throw ParseError(source, lineno, "bad user id");
    b.add_user(u);
  }
  const std::size_t n_edges = section("edges");
  for (std::size_t i = 0; i < n_edges; ++i) {
    const auto f = split_tabs(next());
    UserId a = 0, c = 0;
    if (f.size() != 2 || !parse_number(f[0], a) || !parse_number(f[1], c)) throw ParseError(source, lineno, "bad edge");
    b.add_edge(a, c);
  }
  std::map<LocationId, Coord> coords;
  const std::size_t n_locs = section("locations");
  for (std::size_t i = 0; i < n_locs; ++i) {
    const auto f = split_tabs(next());
    LocationId id = 0;
    Coord c;
    if (f.size() != 3 || !parse_number(f[0], id) || !parse_number(f[1], c.x) || !parse_number(f[2], c.y))
      throw ParseError(source, lineno, "bad location");
    coords[id] = c;
  }
  const std::size_t n_checkins = section("checkins");
  for (std::size_t i = 0; i < n_checkins; ++i) {
    const auto f = split_tabs(next());
    UserId u = 0;
    LocationId id = 0;
    if (f.size() != 3 || !parse_number(f[0], u) || !parse_number(f[1], id)) throw ParseError(source, lineno, "bad check-in");
    const auto it = coords.find(id);
    if (it == coords.end()) throw ParseError(source, lineno, "check-in at unknown location " + std::to_string(id));
    b.add_checkin(u, id, it->second, std::string(f[2]));
  }
  return b.build();
}

LoadReport GraphBuilder::load_social_edges(std::istream& in, const std::string& source) {
  LoadReport report;
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto f = split_tabs(text);
    UserId a = 0, b = 0;
    if (f.size() != 2 || !parse_number(f[0], a) || !parse_number(f[1], b))
      throw ParseError(source, report.lines, "expected '<userA>\\t<userB>'");
    ++report.records;
    if (a == b) {
      ++report.self_loops_skipped;
      add_user(a);
      continue;
    }
    if (!add_edge(a, b)) ++report.duplicates;
  }
  return report;
}

LoadReport GraphBuilder::load_checkins(std::istream& in, const std::string& source) {
  LoadReport report;
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto f = split_tabs(text);
    UserId u = 0;
    LocationId id = 0;
    Coord c;
    if (f.size() != 5 || !parse_number(f[0], u) || !parse_number(f[2], c.x) || !parse_number(f[3], c.y) ||
        !parse_number(f[4], id))
      throw ParseError(source, report.lines, "expected '<user>\\t<timestamp>\\t<lat>\\t<lon>\\t<locid>'");
    try {
      add_checkin(u, id, c, std::string(trim(f[1])));
    } catch (const DataError& e) {
      throw DataError(source + ":" + std::to_string(report.lines) + ": " + e.what());
    }
    ++report.records;
  }
  return report;
}

void GraphBuilder::add_user(UserId u) { adjacency_.try_emplace(u); }

bool GraphBuilder::add_edge(UserId a, UserId b) {
  if (a == b) {
    add_user(a);
    return false;
  }
  auto& adj_a = adjacency_[a];
  auto& adj_b = adjacency_[b];
  const auto pos = std::lower_bound(adj_a.begin(), adj_a.end(), b);
  if (pos != adj_a.end() && *pos == b) return false;
  adj_a.insert(pos, b);
  adj_b.insert(std::lower_bound(adj_b.begin(), adj_b.end(), a), a);
  return true;
}

void GraphBuilder::add_checkin(UserId u, LocationId id, Coord where, std::string timestamp) {
  const auto [it, inserted] = locations_.try_emplace(id, where);
  if (!inserted && (std::abs(it->second.x - where.x) > kCoordTolerance ||
                    std::abs(it->second.y - where.y) > kCoordTolerance))
    throw DataError("conflicting coordinates for location " + std::to_string(id));
  add_user(u);
  checkins_[u].push_back({id, std::move(timestamp)});
}

SocioSpatialGraph GraphBuilder::build() const {
  SocioSpatialGraph g;
  g.adjacency_ = adjacency_;
  g.checkins_ = checkins_;
  g.locations_ = locations_;
  for (const auto& [u, adj] : adjacency_) {
    g.users_.push_back(u);
    g.edge_count_ += adj.size();
  }
  g.edge_count_ /= 2;
  for (const auto& [u, list] : checkins_) g.checkin_count_ += list.size();
  return g;
}

SocioSpatialGraph load_graph_files(const std::string& edges_path, const std::string& checkins_path,
                                   LoadReport* edges_report, LoadReport* checkins_report) {
  std::ifstream edges(edges_path);
  if (!edges) throw DataError("cannot open " + edges_path);
  std::ifstream checkins(checkins_path);
  if (!checkins) throw DataError("cannot open " + checkins_path);
  GraphBuilder b;
  const auto er = b.load_social_edges(edges, edges_path);
  const auto cr = b.load_checkins(checkins, checkins_path);
  if (edges_report) *edges_report = er;
  if (checkins_report) *checkins_report = cr;
  return b.build();
}

SocioSpatialGraph load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return SocioSpatialGraph::read_snapshot(in, path);
}

int checkin_group_for_count(std::size_t distinct_locations) {
  if (distinct_locations < 10) return kFilteredOut;
  if (distinct_locations <= 50) return 50;
  if (distinct_locations <= 100) return 100;
  if (distinct_locations <= 200) return 200;
  if (distinct_locations <= 500) return 500;
  if (distinct_locations <= 1000) return 1000;
  return kNoGroup;
}

int checkin_group(const SocioSpatialGraph& graph, UserId u) {
  return checkin_group_for_count(graph.distinct_locations(u).size());
}

GraphStats compute_stats(const SocioSpatialGraph& graph) {
  GraphStats s;
  s.users = graph.users().size();
  s.edges = graph.edge_count();
  s.checkins = graph.checkin_count();
  s.places = graph.locations().size();
  if (s.users == 0) return s;
  s.avg_checkins = static_cast<double>(s.checkins) / static_cast<double>(s.users);
  s.avg_friends = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.users);

  std::map<UserId, std::vector<LocationId>> places;
  for (UserId u : graph.users()) places[u] = graph.distinct_locations(u);
  double total = 0.0;
  for (UserId u : graph.users()) {
    const auto& mine = places[u];
    if (mine.empty()) continue;
    for (UserId v : graph.friends(u)) {
      const auto& theirs = places[v];
      auto a = mine.begin();
      auto b = theirs.begin();
      while (a != mine.end() && b != theirs.end()) {
        if (*a == *b) {
          total += 1.0;
          break;
        }
        if (*a < *b) ++a; else ++b;
      }
    }
  }
  s.avg_friend_cocheckins = total / static_cast<double>(s.users);
  return s;
}

}  // namespace ssls
