#include "ssls/query_context.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include <yaml-cpp/yaml.h>

#include "ssls/distance.hpp"

namespace ssls {

double QueryContext::dist(int a, int b) const {
  if (a == b) return 0.0;
  if (metric == Metric::kInjectedMatrix) {
    const auto n = candidate_count;
    return matrix[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
  }
  return coord_distance(metric, site_coords[static_cast<std::size_t>(a)], site_coords[static_cast<std::size_t>(b)]);
}

int QueryContext::index_of(LocationId id) const {
  const auto first = sites.begin();
  const auto last = first + static_cast<std::ptrdiff_t>(candidate_count);
  const auto it = std::lower_bound(first, last, id);
  return (it != last && *it == id) ? static_cast<int>(it - first) : -1;
}

std::string QueryContext::label(int site) const {
  const auto i = static_cast<std::size_t>(site);
  if (i < site_labels.size() && !site_labels[i].empty()) return site_labels[i];
  return std::to_string(sites[i]);
}

void QueryContext::compute_normalizers() {
  const std::size_t n = candidate_count;
  const std::size_t m = friends.size();
  mindist.assign(n * m, 0.0);
  d_m.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double worst = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      double best = std::numeric_limits<double>::infinity();
      for (int s : friend_sites[v]) best = std::min(best, dist(static_cast<int>(l), s));
      mindist[l * m + v] = best;
      worst = std::max(worst, best);
    }
    d_m[l] = worst;
  }
  max_d = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) max_d = std::max(max_d, dist(static_cast<int>(a), static_cast<int>(b)));
}

void QueryContext::check_invariants() const {
  if (candidate_count == 0) throw DataError("context has no candidates");
  if (friends.empty()) throw DataError("context has no scoring friends");
  if (!std::is_sorted(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(candidate_count)) ||
      std::adjacent_find(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(candidate_count)) !=
          sites.begin() + static_cast<std::ptrdiff_t>(candidate_count))
    throw DataError("candidates must be distinct and ascending");
  for (std::size_t v = 0; v < friends.size(); ++v)
    if (friend_sites[v].empty()) throw DataError("friend " + std::to_string(friends[v]) + " has no check-ins");
  for (const auto& vis : site_visitors)
    for (int v : vis)
      if (v < 0 || static_cast<std::size_t>(v) >= friends.size()) throw DataError("visitor outside the friend list");
}

QueryContext build_query_context(const SocioSpatialGraph& graph, UserId u, Metric metric) {
  if (!graph.has_user(u)) throw NotFoundError("user " + std::to_string(u) + " not found");
  if (metric == Metric::kInjectedMatrix) throw DomainError("graph contexts need a coordinate metric");

  QueryContext ctx;
  ctx.query_user = u;
  ctx.metric = metric;
  const auto candidates = graph.distinct_locations(u);
  if (candidates.empty()) throw IneligibleQueryError("user " + std::to_string(u) + " has no check-ins");
  for (UserId v : graph.friends(u))
    if (!graph.checkins(v).empty()) ctx.friends.push_back(v);
  if (ctx.friends.empty())
    throw IneligibleQueryError("user " + std::to_string(u) + " has no friends with check-ins");

  std::map<LocationId, int> index;
  for (LocationId id : candidates) {
    index.emplace(id, static_cast<int>(ctx.sites.size()));
    ctx.sites.push_back(id);
  }
  ctx.candidate_count = candidates.size();
  // Friend-only locations follow the candidates, in ascending id.
  std::vector<LocationId> extra;
  for (UserId v : ctx.friends)
    for (LocationId id : graph.distinct_locations(v))
      if (!index.count(id)) extra.push_back(id);
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  for (LocationId id : extra) {
    index.emplace(id, static_cast<int>(ctx.sites.size()));
    ctx.sites.push_back(id);
  }
  for (LocationId id : ctx.sites) ctx.site_coords.push_back(graph.location(id));

  ctx.site_visitors.assign(ctx.sites.size(), {});
  ctx.friend_sites.assign(ctx.friends.size(), {});
  for (std::size_t v = 0; v < ctx.friends.size(); ++v) {
    for (LocationId id : graph.distinct_locations(ctx.friends[v])) {
      const int s = index.at(id);
      ctx.friend_sites[v].push_back(s);
      ctx.site_visitors[static_cast<std::size_t>(s)].push_back(static_cast<int>(v));
    }
    std::sort(ctx.friend_sites[v].begin(), ctx.friend_sites[v].end());
  }
  ctx.compute_normalizers();
  return ctx;
}

namespace {

std::vector<std::string> string_list(const YAML::Node& node, const std::string& key, const std::string& source) {
  if (!node[key] || !node[key].IsSequence()) throw ParseError(source, 0, "missing sequence '" + key + "'");
  std::vector<std::string> out;
  for (const auto& item : node[key]) out.push_back(item.as<std::string>());
  return out;
}

}  // namespace

QueryContext load_toy_fixture(std::istream& in, const std::string& source) {
  YAML::Node doc;
  try {
    doc = YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw ParseError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
  }
  if (!doc["fixture_version"] || doc["fixture_version"].as<int>() != 1)
    throw ParseError(source, 0, "expected fixture_version: 1");

  QueryContext ctx;
  ctx.metric = Metric::kInjectedMatrix;
  ctx.site_labels = string_list(doc, "candidates", source);
  ctx.friend_labels = string_list(doc, "friends", source);
  const std::size_t n = ctx.site_labels.size();
  const std::size_t m = ctx.friend_labels.size();
  if (n == 0) throw DataError(source + ": no candidates");
  ctx.candidate_count = n;
  for (std::size_t i = 0; i < n; ++i) ctx.sites.push_back(static_cast<LocationId>(i + 1));
  for (std::size_t v = 0; v < m; ++v) ctx.friends.push_back(static_cast<UserId>(v + 1));

  const auto rows = doc["distance_matrix"];
  if (!rows || !rows.IsSequence() || rows.size() != n) throw DataError(source + ": distance_matrix must be " + std::to_string(n) + " rows");
  ctx.matrix.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].IsSequence() || rows[i].size() != n) throw DataError(source + ": distance_matrix row " + std::to_string(i + 1) + " has the wrong length");
    for (std::size_t j = 0; j < n; ++j) ctx.matrix[i * n + j] = rows[i][j].as<double>();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.matrix[i * n + i] != 0.0) throw DataError(source + ": non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = ctx.matrix[i * n + j];
      if (!(d >= 0.0) || std::isinf(d)) throw DataError(source + ": negative or non-finite distance");
      if (d != ctx.matrix[j * n + i]) throw DataError(source + ": distance matrix is not symmetric");
    }
  }

  std::map<std::string, int> friend_index;
  for (std::size_t v = 0; v < m; ++v) friend_index[ctx.friend_labels[v]] = static_cast<int>(v);
  ctx.site_visitors.assign(n, {});
  ctx.friend_sites.assign(m, {});
  const auto vis = doc["visitor_sets"];
  if (!vis || !vis.IsMap()) throw ParseError(source, 0, "missing map 'visitor_sets'");
  for (std::size_t i = 0; i < n; ++i) {
    const auto entry = vis[ctx.site_labels[i]];
    if (!entry) continue;
    for (const auto& f : entry) {
      const auto it = friend_index.find(f.as<std::string>());
      if (it == friend_index.end()) throw DataError(source + ": unknown friend '" + f.as<std::string>() + "'");
      ctx.site_visitors[i].push_back(it->second);
      ctx.friend_sites[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    }
    std::sort(ctx.site_visitors[i].begin(), ctx.site_visitors[i].end());
    ctx.site_visitors[i].erase(std::unique(ctx.site_visitors[i].begin(), ctx.site_visitors[i].end()), ctx.site_visitors[i].end());
  }
  for (auto& fs : ctx.friend_sites) {
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  }
  ctx.check_invariants();
  ctx.compute_normalizers();
  return ctx;
}

QueryContext load_toy_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_toy_fixture(in, path);
}

}  // namespace ssls
