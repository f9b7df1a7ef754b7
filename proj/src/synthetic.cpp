#include "ssls/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>

namespace ssls {

QueryContext synthetic_context(const SyntheticContextSpec& spec, std::uint64_t seed) {
  if (spec.candidates < 1 || spec.friends < 1 || spec.extra_sites < 0) throw DomainError("bad synthetic context size");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, spec.extent);
  std::bernoulli_distribution visit(spec.visit_probability);

  QueryContext ctx;
  ctx.metric = Metric::kPlanarEuclidean;
  const int n = spec.candidates;
  const int total = n + spec.extra_sites;
  ctx.candidate_count = static_cast<std::size_t>(n);
  for (int s = 0; s < total; ++s) {
    ctx.sites.push_back(s + 1);
    const double x = coord(rng);
    const double y = coord(rng);
    ctx.site_coords.push_back({x, y});
  }
  ctx.site_visitors.assign(static_cast<std::size_t>(total), {});
  ctx.friend_sites.assign(static_cast<std::size_t>(spec.friends), {});
  std::uniform_int_distribution<int> any_site(0, total - 1);
  for (int v = 0; v < spec.friends; ++v) {
    ctx.friends.push_back(v + 1);
    auto& fs = ctx.friend_sites[static_cast<std::size_t>(v)];
    for (int s = 0; s < total; ++s)
      if (visit(rng)) fs.push_back(s);
    if (fs.empty()) fs.push_back(any_site(rng));
    for (int s : fs) ctx.site_visitors[static_cast<std::size_t>(s)].push_back(v);
  }
  ctx.compute_normalizers();
  return ctx;
}

SocioSpatialGraph synthetic_graph(const SyntheticGraphSpec& spec, std::uint64_t seed) {
  if (spec.users < 2 || spec.places < 1) throw DomainError("bad synthetic graph size");
  std::mt19937_64 rng(seed);
  GraphBuilder b;

  // Places form a handful of city-sized clusters.
  const int clusters = std::max(1, spec.places / 300);
  std::uniform_real_distribution<double> lat0(25.0, 48.0), lon0(-120.0, -75.0);
  std::vector<Coord> centers;
  for (int c = 0; c < clusters; ++c) {
    const double la = lat0(rng);
    const double lo = lon0(rng);
    centers.push_back({la, lo});
  }
  std::normal_distribution<double> jitter(0.0, 0.08);
  std::vector<Coord> place_coord;
  std::vector<int> place_cluster;
  for (int p = 0; p < spec.places; ++p) {
    const int c = p % clusters;
    const double dx = jitter(rng);
    const double dy = jitter(rng);
    place_coord.push_back({centers[static_cast<std::size_t>(c)].x + dx, centers[static_cast<std::size_t>(c)].y + dy});
    place_cluster.push_back(c);
  }
  std::vector<std::vector<int>> cluster_places(static_cast<std::size_t>(clusters));
  for (int p = 0; p < spec.places; ++p) cluster_places[static_cast<std::size_t>(place_cluster[static_cast<std::size_t>(p)])].push_back(p);

  // Users are assigned a home cluster; friendships mostly stay inside a cluster.
  std::vector<int> home(static_cast<std::size_t>(spec.users));
  std::uniform_int_distribution<int> pick_cluster(0, clusters - 1);
  for (auto& h : home) h = pick_cluster(rng);
  std::vector<std::vector<int>> cluster_users(static_cast<std::size_t>(clusters));
  for (int u = 0; u < spec.users; ++u) cluster_users[static_cast<std::size_t>(home[static_cast<std::size_t>(u)])].push_back(u);
  std::uniform_int_distribution<int> any_user(0, spec.users - 1);
  std::bernoulli_distribution local(0.85);
  const long edges = static_cast<long>(spec.users) * spec.average_degree / 2;
  for (long e = 0; e < edges; ++e) {
    const int a = any_user(rng);
    const auto& mates = cluster_users[static_cast<std::size_t>(home[static_cast<std::size_t>(a)])];
    int c = any_user(rng);
    if (local(rng) && mates.size() > 1) {
      std::uniform_int_distribution<std::size_t> m(0, mates.size() - 1);
      c = mates[m(rng)];
    }
    b.add_edge(a + 1, c + 1);
  }
  for (int u = 0; u < spec.users; ++u) b.add_user(u + 1);
  const auto graph_edges = b.build();

  // Check-ins: skewed place counts, some places borrowed from friends.
  std::vector<std::set<int>> visited(static_cast<std::size_t>(spec.users));
  std::uniform_int_distribution<int> span(0, 1000);
  std::bernoulli_distribution share(spec.share_probability);
  for (int u = 0; u < spec.users; ++u) {
    const double t = static_cast<double>(span(rng)) / 1000.0;
    const int count = spec.min_places_per_user +
                      static_cast<int>(t * t * (spec.max_places_per_user - spec.min_places_per_user));
    const auto& local_places = cluster_places[static_cast<std::size_t>(home[static_cast<std::size_t>(u)])];
    std::uniform_int_distribution<std::size_t> lp(0, local_places.size() - 1);
    std::uniform_int_distribution<int> ts_day(1, 28);
    const auto& fr = graph_edges.friends(u + 1);
    auto& mine = visited[static_cast<std::size_t>(u)];
    int guard = 0;
    while (static_cast<int>(mine.size()) < count && guard++ < count * 20) {
      int place = local_places[lp(rng)];
      if (!fr.empty() && share(rng)) {
        std::uniform_int_distribution<std::size_t> fi(0, fr.size() - 1);
        const auto& theirs = visited[static_cast<std::size_t>(fr[fi(rng)] - 1)];
        if (!theirs.empty()) {
          std::uniform_int_distribution<std::size_t> ti(0, theirs.size() - 1);
          place = *std::next(theirs.begin(), static_cast<std::ptrdiff_t>(ti(rng)));
        }
      }
      if (!mine.insert(place).second) continue;
      char ts[32];
      std::snprintf(ts, sizeof ts, "2010-%02d-%02dT12:00:00Z", 1 + place % 12, ts_day(rng));
      b.add_checkin(u + 1, place + 1, place_coord[static_cast<std::size_t>(place)], ts);
    }
  }
  return b.build();
}

void write_graph_tsv(const SocioSpatialGraph& graph, std::ostream& edges, std::ostream& checkins) {
  char buf[64];
  for (UserId u : graph.users())
    for (UserId v : graph.friends(u)) edges << u << "\t" << v << "\n";
  for (UserId u : graph.users())
    for (const auto& c : graph.checkins(u)) {
      const auto& at = graph.location(c.location);
      std::snprintf(buf, sizeof buf, "%.17g\t%.17g", at.x, at.y);
      checkins << u << "\t" << c.timestamp << "\t" << buf << "\t" << c.location << "\n";
    }
}

}  // namespace ssls
