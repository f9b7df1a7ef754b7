// Python module: graph loading, query contexts, solvers and metrics.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>

#include "ssls/baselines.hpp"
#include "ssls/graph.hpp"
#include "ssls/metrics.hpp"
#include "ssls/query_context.hpp"
#include "ssls/report.hpp"
#include "ssls/scoring.hpp"
#include "ssls/solvers.hpp"
#include "ssls/synthetic.hpp"

namespace py = pybind11;
using namespace ssls;

namespace {

py::dict telemetry_dict(const Telemetry& t) {
  py::dict d;
  d["states_expanded"] = t.states_expanded;
  d["pruned_property1"] = t.pruned_property1;
  d["pruned_property2"] = t.pruned_property2;
  d["pruned_relaxed"] = t.pruned_relaxed;
  d["terminated_branches"] = t.terminated_branches;
  d["d_hat_evals"] = t.d_hat_evals;
  d["pair_evals"] = t.pair_evals;
  d["roots_total"] = t.roots_total;
  d["roots_terminated"] = t.roots_terminated;
  d["greedy_steps"] = t.greedy_steps;
  d["swap_rounds"] = t.swap_rounds;
  d["exhausted"] = t.exhausted;
  d["relaxed"] = t.relaxed;
  d["wall_ms"] = t.wall_ms;
  d["score_trace"] = t.score_trace;
  return d;
}

Params make_params(int k, double alpha, double omega, double theta, const QueryContext& ctx,
                   std::optional<std::uint64_t> max_states) {
  Params p;
  p.k = k;
  p.alpha = alpha;
  p.omega = omega;
  p.theta = theta;
  p.metric = ctx.metric;
  p.max_states = max_states;
  validate(p);
  return p;
}

MmdMode parse_mode(const std::string& mode) {
  if (mode == "spatial") return MmdMode::kSpatial;
  if (mode == "socio-spatial" || mode == "ss") return MmdMode::kSocioSpatial;
  throw DomainError("mode must be 'spatial' or 'socio-spatial'");
}

std::vector<int> indices_of(const QueryContext& ctx, const std::vector<LocationId>& ids) {
  std::vector<int> out;
  for (auto id : ids) {
    const int i = ctx.index_of(id);
    if (i < 0 || static_cast<std::size_t>(i) >= ctx.size()) throw NotFoundError("location " + std::to_string(id) + " is not a candidate");
    out.push_back(i);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ssls, m) {
  m.doc() = "Socio-spatial location selection";

  auto base = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);
  py::register_exception<IneligibleQueryError>(m, "IneligibleQueryError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<SocioSpatialGraph>(m, "Graph")
      .def_property_readonly("users", &SocioSpatialGraph::users)
      .def("friends", &SocioSpatialGraph::friends, py::arg("user"))
      .def("locations_of", &SocioSpatialGraph::distinct_locations, py::arg("user"))
      .def_property_readonly("edge_count", &SocioSpatialGraph::edge_count)
      .def_property_readonly("checkin_count", &SocioSpatialGraph::checkin_count)
      .def("checkin_group", [](const SocioSpatialGraph& g, UserId u) { return checkin_group(g, u); })
      .def("stats",
           [](const SocioSpatialGraph& g) {
             const auto s = compute_stats(g);
             py::dict d;
             d["users"] = s.users;
             d["edges"] = s.edges;
             d["checkins"] = s.checkins;
             d["places"] = s.places;
             d["avg_checkins"] = s.avg_checkins;
             d["avg_friends"] = s.avg_friends;
             d["avg_friend_cocheckins"] = s.avg_friend_cocheckins;
             return d;
           })
      .def("write_snapshot", [](const SocioSpatialGraph& g, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write " + path);
        g.write_snapshot(out);
      });

  m.def("load_graph", [](const std::string& edges, const std::string& checkins) { return load_graph_files(edges, checkins); },
        py::arg("edges"), py::arg("checkins"));
  m.def("load_snapshot", &load_snapshot_file, py::arg("path"));
  m.def("eligible_users", &eligible_users, py::arg("graph"), py::arg("group"));

  py::class_<QueryContext>(m, "Context")
      .def_property_readonly("size", &QueryContext::size)
      .def_property_readonly("friend_count", &QueryContext::friend_count)
      .def_property_readonly("query_user", [](const QueryContext& c) { return c.query_user; })
      .def_property_readonly("metric", [](const QueryContext& c) { return std::string(to_string(c.metric)); })
      .def_property_readonly("candidates",
                             [](const QueryContext& c) {
                               return std::vector<LocationId>(c.sites.begin(), c.sites.begin() + static_cast<std::ptrdiff_t>(c.size()));
                             })
      .def("label", [](const QueryContext& c, LocationId id) { return c.label(indices_of(c, {id}).front()); });

  m.def("query_context",
        [](const SocioSpatialGraph& g, UserId user, const std::string& metric) {
          return build_query_context(g, user, parse_metric(metric));
        },
        py::arg("graph"), py::arg("user"), py::arg("metric") = "haversine");
  m.def("load_fixture", &load_toy_fixture_file, py::arg("path"));
  m.def("synthetic_context",
        [](int candidates, int friends, int extra_sites, double visit_probability, double extent, std::uint64_t seed) {
          SyntheticContextSpec spec{candidates, friends, extra_sites, visit_probability, extent};
          return synthetic_context(spec, seed);
        },
        py::arg("candidates") = 10, py::arg("friends") = 6, py::arg("extra_sites") = 6,
        py::arg("visit_probability") = 0.3, py::arg("extent") = 100.0, py::arg("seed") = 0);

  py::class_<SelectionResult>(m, "Result")
      .def_readonly("algo", &SelectionResult::algo)
      .def_readonly("locations", &SelectionResult::locations)
      .def_property_readonly("score", [](const SelectionResult& r) { return r.score.total; })
      .def_property_readonly("relevance_sum", [](const SelectionResult& r) { return r.score.relevance_sum; })
      .def_property_readonly("diversity_sum", [](const SelectionResult& r) { return r.score.diversity_sum; })
      .def_property_readonly("telemetry", [](const SelectionResult& r) { return telemetry_dict(r.telemetry); })
      .def("__repr__", [](const SelectionResult& r) {
        std::string ids;
        for (auto id : r.locations) ids += (ids.empty() ? "" : ", ") + std::to_string(id);
        return "<Result " + r.algo + " [" + ids + "] F=" + std::to_string(r.score.total) + ">";
      });

  m.attr("ALGORITHMS") = std::vector<std::string>(std::begin(kAlgorithms), std::end(kAlgorithms));

  m.def("select",
        [](const QueryContext& ctx, const std::string& algo, int k, double alpha, double omega,
           std::optional<std::uint64_t> max_states, std::uint64_t seed, std::uint64_t brute_cap) {
          if (!is_algorithm(algo)) throw DomainError("unknown algorithm '" + algo + "'");
          const auto p = make_params(k, alpha, omega, 1.0, ctx, max_states);
          BaselineConfig cfg;
          cfg.gne.rng_seed = seed;
          py::gil_scoped_release release;
          const ScoreTable table(ctx, alpha);
          return run_algorithm(algo, table, p, cfg, brute_cap);
        },
        py::arg("ctx"), py::arg("algo") = "exact", py::arg("k") = 6, py::arg("alpha") = 0.5, py::arg("omega") = 0.5,
        py::arg("max_states") = py::none(), py::arg("seed") = 42, py::arg("brute_cap") = kDefaultBruteCap);

  m.def("result_json",
        [](const QueryContext& ctx, const SelectionResult& r, int k, double alpha, double omega, double theta) {
          return result_json(ctx, r, make_params(k, alpha, omega, theta, ctx, std::nullopt), false);
        },
        py::arg("ctx"), py::arg("result"), py::arg("k"), py::arg("alpha") = 0.5, py::arg("omega") = 0.5,
        py::arg("theta") = 1.0);

  m.def("relevance",
        [](const QueryContext& ctx, double alpha) {
          const ScoreTable t(ctx, alpha);
          py::dict d;
          for (std::size_t i = 0; i < t.size(); ++i) d[py::int_(ctx.candidate(static_cast<int>(i)))] = t.relevance(static_cast<int>(i));
          return d;
        },
        py::arg("ctx"), py::arg("alpha") = 0.5);
  m.def("diversity",
        [](const QueryContext& ctx, LocationId a, LocationId b, double alpha) {
          const auto idx = indices_of(ctx, {a, b});
          return pair_diversity(ctx, idx[0], idx[1], alpha);
        },
        py::arg("ctx"), py::arg("a"), py::arg("b"), py::arg("alpha") = 0.5);
  m.def("score",
        [](const QueryContext& ctx, const std::vector<LocationId>& ids, double alpha, double omega) {
          const ScoreTable t(ctx, alpha);
          return canonical_score(t, indices_of(ctx, ids), omega);
        },
        py::arg("ctx"), py::arg("locations"), py::arg("alpha") = 0.5, py::arg("omega") = 0.5);

  m.def("precision",
        [](const std::vector<LocationId>& s, const std::vector<LocationId>& exact) { return precision(s, exact); },
        py::arg("selected"), py::arg("exact"));
  m.def("mmd",
        [](const QueryContext& ctx, const std::vector<LocationId>& ids, const std::string& mode, double alpha) {
          return mmd(ctx, indices_of(ctx, ids), parse_mode(mode), alpha);
        },
        py::arg("ctx"), py::arg("locations"), py::arg("mode") = "spatial", py::arg("alpha") = 0.5);
  m.def("social_coverage",
        [](const QueryContext& ctx, const std::vector<LocationId>& ids, double theta) {
          return social_coverage(ctx, indices_of(ctx, ids), theta);
        },
        py::arg("ctx"), py::arg("locations"), py::arg("theta"));
  m.def("social_entropy",
        [](const QueryContext& ctx, const std::vector<LocationId>& ids) {
          return social_entropy(ctx, indices_of(ctx, ids));
        },
        py::arg("ctx"), py::arg("locations"));
}
