#include "ssls/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ssls/metrics.hpp"
#include "ssls/solvers.hpp"

namespace ssls {
namespace {

using Json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Json telemetry_json(const Telemetry& t, bool timing) {
  Json j;
  j["states_expanded"] = t.states_expanded;
  j["pruned_property1"] = t.pruned_property1;
  j["pruned_property2"] = t.pruned_property2;
  j["pruned_relaxed"] = t.pruned_relaxed;
  j["terminated_branches"] = t.terminated_branches;
  j["d_hat_evals"] = t.d_hat_evals;
  j["pair_evals"] = t.pair_evals;
  j["roots_total"] = t.roots_total;
  j["roots_terminated"] = t.roots_terminated;
  j["greedy_steps"] = t.greedy_steps;
  j["swap_rounds"] = t.swap_rounds;
  j["exhausted"] = t.exhausted;
  j["relaxed"] = t.relaxed;
  j["wall_ms"] = timing ? t.wall_ms : 0.0;
  return j;
}

Json position(const QueryContext& ctx, int site) {
  const auto& c = ctx.site_coords[static_cast<std::size_t>(site)];
  // GeoJSON wants [lon, lat]; planar coordinates go through unchanged.
  if (ctx.metric == Metric::kHaversineKm) return Json::array({c.y, c.x});
  return Json::array({c.x, c.y});
}

}  // namespace

bool is_algorithm(const std::string& name) {
  return std::find(std::begin(kAlgorithms), std::end(kAlgorithms), name) != std::end(kAlgorithms);
}

SelectionResult run_algorithm(const std::string& algo, const ScoreTable& table, const Params& params,
                              const BaselineConfig& baselines, std::uint64_t brute_cap) {
  if (algo == "exact") return solve_exact(table, params);
  if (algo == "approx") return solve_approx(table, params);
  if (algo == "exactplus") return solve_exact_plus(table, params);
  if (algo == "fast") return solve_fast_approx(table, params);
  if (algo == "gmc") return gmc(table, params);
  if (algo == "gne") return gne(table, params, baselines.gne);
  if (algo == "sos") return adaptive_sos(table, params, baselines.sos);
  if (algo == "brute") return brute_force(table, params, brute_cap);
  throw DomainError("unknown algorithm '" + algo + "'");
}

std::string result_json(const QueryContext& ctx, const SelectionResult& result, const Params& params, bool timing) {
  Json doc;
  doc["user"] = ctx.query_user;
  doc["algo"] = result.algo;
  doc["k"] = params.k;
  doc["alpha"] = params.alpha;
  doc["omega"] = params.omega;
  doc["metric"] = std::string(to_string(ctx.metric));
  Json selected = Json::array();
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    const int m = result.members[i];
    Json s;
    s["locid"] = ctx.candidate(m);
    if (!ctx.site_labels.empty()) s["label"] = ctx.label(m);
    if (!ctx.site_coords.empty()) s["coord"] = Json::array({ctx.site_coords[static_cast<std::size_t>(m)].x,
                                                             ctx.site_coords[static_cast<std::size_t>(m)].y});
    s["min_div"] = result.score.min_div[i];
    selected.push_back(std::move(s));
  }
  doc["selected"] = std::move(selected);
  doc["score"] = {{"F", result.score.total},
                  {"relevance_sum", result.score.relevance_sum},
                  {"diversity_sum", result.score.diversity_sum}};
  if (!result.members.empty()) {
    Json metrics;
    metrics["mmd_spatial"] = mmd(ctx, result.members, MmdMode::kSpatial, params.alpha);
    metrics["mmd_ss"] = mmd(ctx, result.members, MmdMode::kSocioSpatial, params.alpha);
    metrics["theta"] = params.theta;
    metrics["sc_theta"] = social_coverage(ctx, result.members, params.theta);
    metrics["se"] = social_entropy(ctx, result.members);
    metrics["se_degenerate"] = entropy_degenerate(ctx, result.members);
    doc["metrics"] = std::move(metrics);
  }
  doc["telemetry"] = telemetry_json(result.telemetry, timing);
  return doc.dump(2) + "\n";
}

std::string result_geojson(const QueryContext& ctx, const SelectionResult& result) {
  if (ctx.site_coords.empty()) throw DomainError("GeoJSON export needs coordinates");
  Json features = Json::array();
  for (int m : result.members) {
    Json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", position(ctx, m)}};
    f["properties"] = {{"role", "selected"}, {"locid", ctx.candidate(m)}};
    features.push_back(std::move(f));
  }
  for (std::size_t s = 0; s < ctx.sites.size(); ++s) {
    const auto& vis = ctx.site_visitors[s];
    if (vis.empty()) continue;
    Json friends = Json::array();
    for (int v : vis) friends.push_back(ctx.friends[static_cast<std::size_t>(v)]);
    Json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"}, {"coordinates", position(ctx, static_cast<int>(s))}};
    f["properties"] = {{"role", "friend_checkin"}, {"locid", ctx.sites[s]}, {"friends", std::move(friends)}};
    features.push_back(std::move(f));
  }
  Json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

std::string scores_csv(const ScoreTable& table, bool with_pairs) {
  const auto& ctx = table.context();
  std::ostringstream out;
  out << "locid,S_sc,S_sp,R_ss\n";
  for (std::size_t l = 0; l < table.size(); ++l) {
    const int i = static_cast<int>(l);
    out << ctx.label(i) << "," << fixed6(table.social(i)) << "," << fixed6(table.spatial(i)) << ","
        << fixed6(table.relevance(i)) << "\n";
  }
  if (with_pairs) {
    out << "\nlocid";
    for (std::size_t l = 0; l < table.size(); ++l) out << "," << ctx.label(static_cast<int>(l));
    out << "\n";
    for (std::size_t a = 0; a < table.size(); ++a) {
      out << ctx.label(static_cast<int>(a));
      for (std::size_t b = 0; b < table.size(); ++b)
        out << "," << fixed6(table.diversity(static_cast<int>(a), static_cast<int>(b)));
      out << "\n";
    }
  }
  return out.str();
}

std::vector<UserId> eligible_users(const SocioSpatialGraph& graph, int group) {
  std::vector<UserId> out;
  for (UserId u : graph.users()) {
    if (checkin_group(graph, u) != group) continue;
    int scoring = 0;
    for (UserId v : graph.friends(u))
      if (!graph.checkins(v).empty()) ++scoring;
    if (scoring >= 2) out.push_back(u);
  }
  return out;
}

std::vector<UserId> sample_users(const SocioSpatialGraph& graph, int group, std::size_t sample, std::uint64_t seed) {
  auto users = eligible_users(graph, group);
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(sample, users.size());
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, users.size() - 1);
    std::swap(users[i], users[pick(rng)]);
  }
  users.resize(take);
  std::sort(users.begin(), users.end());
  return users;
}

namespace {

std::vector<BenchRow> bench_user(const SocioSpatialGraph& graph, UserId u, const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  const auto ctx = build_query_context(graph, u, opts.params.metric);
  const ScoreTable table(ctx, opts.params.alpha);
  for (int k : opts.k_list) {
    if (static_cast<std::size_t>(k) > ctx.size()) continue;
    Params p = opts.params;
    p.k = k;
    const auto reference = solve_exact(table, p);
    for (const auto& algo : opts.algos) {
      const auto r = algo == "exact" ? reference : run_algorithm(algo, table, p, opts.baselines, opts.brute_cap);
      BenchRow row;
      row.user = std::to_string(u);
      row.algo = algo;
      row.k = k;
      row.alpha = p.alpha;
      row.omega = p.omega;
      row.f = r.score.total;
      row.precision = precision(r.locations, reference.locations);
      row.mmd_spatial = mmd(ctx, r.members, MmdMode::kSpatial, p.alpha);
      row.mmd_ss = mmd(ctx, r.members, MmdMode::kSocioSpatial, p.alpha);
      row.sc_theta = social_coverage(ctx, r.members, p.theta);
      row.se = social_entropy(ctx, r.members);
      row.wall_ms = opts.timing ? r.telemetry.wall_ms : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<BenchRow> run_bench(const SocioSpatialGraph& graph, const BenchOptions& opts) {
  for (const auto& a : opts.algos)
    if (!is_algorithm(a)) throw DomainError("unknown algorithm '" + a + "'");
  const auto users = sample_users(graph, opts.group, opts.sample, opts.seed);
  std::vector<std::vector<BenchRow>> per_user(users.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= users.size()) return;
      try {
        per_user[i] = bench_user(graph, users[i], opts);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(std::max<std::size_t>(1, users.size()))));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<BenchRow> rows;
  for (auto& r : per_user) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    const auto ua = std::stoll(a.user);
    const auto ub = std::stoll(b.user);
    if (ua != ub) return ua < ub;
    if (a.algo != b.algo) return a.algo < b.algo;
    return a.k < b.k;
  });

  std::map<std::pair<std::string, int>, std::pair<BenchRow, int>> cells;
  for (const auto& r : rows) {
    auto& [acc, count] = cells[{r.algo, r.k}];
    if (count == 0) {
      acc = r;
      acc.user = "mean";
    } else {
      acc.f += r.f;
      acc.precision += r.precision;
      acc.mmd_spatial += r.mmd_spatial;
      acc.mmd_ss += r.mmd_ss;
      acc.sc_theta += r.sc_theta;
      acc.se += r.se;
      acc.wall_ms += r.wall_ms;
    }
    ++count;
  }
  for (auto& [key, cell] : cells) {
    auto [acc, count] = cell;
    const double c = static_cast<double>(count);
    acc.f /= c;
    acc.precision /= c;
    acc.mmd_spatial /= c;
    acc.mmd_ss /= c;
    acc.sc_theta /= c;
    acc.se /= c;
    acc.wall_ms /= c;
    rows.push_back(acc);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "user,algo,k,alpha,omega,F,precision,mmd_spatial,mmd_ss,sc_theta,se,wall_ms\n";
  for (const auto& r : rows) {
    out << r.user << "," << r.algo << "," << r.k << "," << fixed6(r.alpha) << "," << fixed6(r.omega) << ","
        << fixed6(r.f) << "," << fixed6(r.precision) << "," << fixed6(r.mmd_spatial) << "," << fixed6(r.mmd_ss)
        << "," << fixed6(r.sc_theta) << "," << fixed6(r.se) << "," << fixed6(r.wall_ms) << "\n";
  }
  return out.str();
}

std::string stats_text(const GraphStats& s) {
  std::ostringstream out;
  out << "Users\t" << s.users << "\n"
      << "Edges\t" << s.edges << "\n"
      << "Checkins\t" << s.checkins << "\n"
      << "Places\t" << s.places << "\n"
      << "AC\t" << fixed6(s.avg_checkins) << "\n"
      << "AF\t" << fixed6(s.avg_friends) << "\n"
      << "AFC\t" << fixed6(s.avg_friend_cocheckins) << "\n";
  return out.str();
}

}  // namespace ssls
