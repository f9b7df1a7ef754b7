// Command-line front end: ingest, query, bench, stats, scores, synth.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssls/graph.hpp"
#include "ssls/query_context.hpp"
#include "ssls/report.hpp"
#include "ssls/solvers.hpp"
#include "ssls/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_snapshot() {
  if (const char* dir = std::getenv("SSLS_DATA_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / "graph.snapshot").string();
  return {};
}

std::string snapshot_or_default(const std::string& given) {
  if (!given.empty()) return given;
  auto d = default_snapshot();
  if (d.empty()) throw UsageError("no --snapshot given and SSLS_DATA_DIR is not set");
  return d;
}

double clamp_omega(double omega) {
  if (omega <= 0.0) {
    std::cerr << "warning: omega must lie strictly inside (0,1); using 1e-6\n";
    return 1e-6;
  }
  if (omega >= 1.0) {
    std::cerr << "warning: omega must lie strictly inside (0,1); using 1-1e-6\n";
    return 1.0 - 1e-6;
  }
  return omega;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ssls::DataError("cannot write " + path);
  out << text;
}

struct Common {
  int k = 6;
  double alpha = 0.5;
  double omega = 0.5;
  double theta = 1.0;
  std::string metric;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_states;
  std::uint64_t brute_cap = ssls::kDefaultBruteCap;
  std::string config;
  bool timing = false;

  void add_to(CLI::App* app, bool with_k) {
    if (with_k) app->add_option("--k", k, "number of locations to select")->check(CLI::PositiveNumber);
    app->add_option("--alpha", alpha, "social/spatial blend")->check(CLI::Range(0.0, 1.0));
    app->add_option("--omega", omega, "relevance/diversity blend");
    app->add_option("--theta", theta, "coverage radius (km or fixture units)")->check(CLI::NonNegativeNumber);
    app->add_option("--metric", metric, "planar | haversine | matrix");
    app->add_option("--seed", seed, "seed for the randomized baseline");
    app->add_option("--max-states", max_states, "node budget for the branch-and-bound solvers");
    app->add_option("--brute-cap", brute_cap, "largest subset count brute force will enumerate");
    app->add_option("--config", config, "YAML file with a baselines: section");
    app->add_flag("--timing", timing, "report wall-clock times (output is then not reproducible)");
  }

  ssls::Params params(ssls::Metric fallback) const {
    ssls::Params p;
    p.k = k;
    p.alpha = alpha;
    p.omega = clamp_omega(omega);
    p.theta = theta;
    p.metric = metric.empty() ? fallback : ssls::parse_metric(metric);
    p.max_states = max_states;
    return p;
  }

  ssls::BaselineConfig baselines() const {
    auto cfg = config.empty() ? ssls::BaselineConfig{} : ssls::load_baseline_config_file(config);
    if (seed) cfg.gne.rng_seed = *seed;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-k socio-spatial co-engaged location selection"};
  app.require_subcommand(1);

  std::string edges, checkins, out;
  auto* ingest = app.add_subcommand("ingest", "load SNAP-style TSV files and write a snapshot");
  ingest->add_option("--edges", edges, "friendship TSV")->required();
  ingest->add_option("--checkins", checkins, "check-in TSV")->required();
  ingest->add_option("--out", out, "snapshot path (default $SSLS_DATA_DIR/graph.snapshot)");

  Common q;
  std::string snapshot, fixture, geojson, algo = "exact";
  std::optional<ssls::UserId> user;
  auto* query = app.add_subcommand("query", "answer one query");
  query->add_option("--snapshot", snapshot, "graph snapshot");
  query->add_option("--fixture", fixture, "fixture file with an explicit distance matrix");
  query->add_option("--user", user, "query user");
  query->add_option("--algo", algo, "exact | approx | exactplus | fast | gmc | gne | sos | brute");
  query->add_option("--geojson", geojson, "also write a GeoJSON FeatureCollection here");
  q.add_to(query, true);

  Common b;
  ssls::BenchOptions bench_opts;
  std::vector<int> k_list;
  std::vector<std::string> algos;
  std::size_t sample = 10;
  int group = 50;
  int workers = 1;
  std::string bench_snapshot;
  auto* bench = app.add_subcommand("bench", "sweep k and algorithms over sampled users of a check-in group");
  bench->add_option("--snapshot", bench_snapshot, "graph snapshot");
  bench->add_option("--group", group, "check-in group")->check(CLI::IsMember({50, 100, 200, 500, 1000}));
  bench->add_option("--k", k_list, "k values (comma separated)")->delimiter(',');
  bench->add_option("--algo", algos, "algorithms (comma separated)")->delimiter(',');
  bench->add_option("--sample", sample, "users to sample");
  bench->add_option("--workers", workers, "parallel queries")->check(CLI::PositiveNumber);
  b.add_to(bench, false);

  std::string stats_snapshot;
  auto* stats = app.add_subcommand("stats", "dataset summary");
  stats->add_option("--snapshot", stats_snapshot, "graph snapshot");

  Common s;
  std::string scores_snapshot, scores_fixture;
  std::optional<ssls::UserId> scores_user;
  bool pairs = false;
  auto* scores = app.add_subcommand("scores", "dump per-location scores as CSV");
  scores->add_option("--snapshot", scores_snapshot, "graph snapshot");
  scores->add_option("--fixture", scores_fixture, "fixture file");
  scores->add_option("--user", scores_user, "query user");
  scores->add_flag("--pairs", pairs, "append the pair diversity matrix");
  s.add_to(scores, false);

  int synth_users = 200;
  std::uint64_t synth_seed = 1;
  std::string synth_dir = ".";
  auto* synth = app.add_subcommand("synth", "write a random network as TSV files");
  synth->add_option("--users", synth_users, "number of users")->check(CLI::Range(2, 1000000));
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out-dir", synth_dir, "directory for edges.tsv and checkins.tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) {
      ssls::LoadReport er, cr;
      const auto graph = ssls::load_graph_files(edges, checkins, &er, &cr);
      const auto path = snapshot_or_default(out);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw ssls::DataError("cannot write " + path);
      graph.write_snapshot(f);
      std::cout << "Users\t" << graph.users().size() << "\nEdges\t" << graph.edge_count() << "\nCheckins\t"
                << graph.checkin_count() << "\nPlaces\t" << graph.locations().size() << "\n";
      if (er.self_loops_skipped) std::cerr << "warning: skipped " << er.self_loops_skipped << " self-loops\n";
    } else if (*query) {
      if (!ssls::is_algorithm(algo)) throw UsageError("unknown algorithm '" + algo + "'");
      if (!fixture.empty() && !snapshot.empty()) throw UsageError("give either --fixture or --snapshot");
      ssls::QueryContext ctx;
      ssls::Params p;
      if (!fixture.empty()) {
        ctx = ssls::load_toy_fixture_file(fixture);
        p = q.params(ssls::Metric::kInjectedMatrix);
        if (p.metric != ssls::Metric::kInjectedMatrix) throw UsageError("fixtures only support --metric matrix");
      } else {
        if (!user) throw UsageError("--user is required with a snapshot");
        const auto graph = ssls::load_snapshot_file(snapshot_or_default(snapshot));
        p = q.params(ssls::Metric::kHaversineKm);
        ctx = ssls::build_query_context(graph, *user, p.metric);
      }
      ssls::validate(p);
      if (!geojson.empty() && ctx.metric == ssls::Metric::kInjectedMatrix)
        throw UsageError("--geojson needs coordinates; the fixture only has a distance matrix");
      if (static_cast<std::size_t>(p.k) > ctx.size())
        throw InfeasibleError("k = " + std::to_string(p.k) + " but the user has only " + std::to_string(ctx.size()) +
                              " locations");
      const ssls::ScoreTable table(ctx, p.alpha);
      ssls::SelectionResult r;
      try {
        r = ssls::run_algorithm(algo, table, p, q.baselines(), q.brute_cap);
      } catch (const ssls::DomainError& e) {
        throw InfeasibleError(e.what());
      }
      std::cout << ssls::result_json(ctx, r, p, q.timing);
      if (!geojson.empty()) write_file(geojson, ssls::result_geojson(ctx, r));
    } else if (*bench) {
      bench_opts.group = group;
      if (!k_list.empty()) bench_opts.k_list = k_list;
      if (!algos.empty()) bench_opts.algos = algos;
      for (const auto& a : bench_opts.algos)
        if (!ssls::is_algorithm(a)) throw UsageError("unknown algorithm '" + a + "'");
      bench_opts.sample = sample;
      bench_opts.seed = b.seed.value_or(1);
      bench_opts.workers = workers;
      bench_opts.params = b.params(ssls::Metric::kHaversineKm);
      if (!bench_opts.params.max_states) bench_opts.params.max_states = 20000;
      ssls::validate(bench_opts.params);
      bench_opts.baselines = b.baselines();
      bench_opts.brute_cap = b.brute_cap;
      bench_opts.timing = b.timing;
      const auto graph = ssls::load_snapshot_file(snapshot_or_default(bench_snapshot));
      const auto rows = ssls::run_bench(graph, bench_opts);
      if (rows.empty()) std::cerr << "note: no eligible users in group " << group << "\n";
      std::cout << ssls::bench_csv(rows);
    } else if (*stats) {
      const auto graph = ssls::load_snapshot_file(snapshot_or_default(stats_snapshot));
      std::cout << ssls::stats_text(ssls::compute_stats(graph));
    } else if (*scores) {
      ssls::QueryContext ctx;
      if (!scores_fixture.empty()) {
        ctx = ssls::load_toy_fixture_file(scores_fixture);
      } else {
        if (!scores_user) throw UsageError("--user is required with a snapshot");
        const auto graph = ssls::load_snapshot_file(snapshot_or_default(scores_snapshot));
        ctx = ssls::build_query_context(graph, *scores_user, s.params(ssls::Metric::kHaversineKm).metric);
      }
      const ssls::ScoreTable table(ctx, s.alpha);
      std::cout << ssls::scores_csv(table, pairs);
    } else if (*synth) {
      ssls::SyntheticGraphSpec spec;
      spec.users = synth_users;
      spec.places = std::max(300, synth_users * 10);
      const auto graph = ssls::synthetic_graph(spec, synth_seed);
      std::filesystem::create_directories(synth_dir);
      std::ofstream e(std::filesystem::path(synth_dir) / "edges.tsv", std::ios::binary);
      std::ofstream c(std::filesystem::path(synth_dir) / "checkins.tsv", std::ios::binary);
      if (!e || !c) throw ssls::DataError("cannot write into " + synth_dir);
      ssls::write_graph_tsv(graph, e, c);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ssls::IneligibleQueryError& e) {
    std::cerr << "error: ineligible query: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ssls::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ssls::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ssls::NotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ssls::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
