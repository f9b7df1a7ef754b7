#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ssls/graph.hpp"
#include "ssls/query_context.hpp"
#include "ssls/synthetic.hpp"

using namespace ssls;

namespace {

SocioSpatialGraph from_text(const std::string& edges, const std::string& checkins) {
  GraphBuilder b;
  std::istringstream e(edges), c(checkins);
  b.load_social_edges(e, "edges");
  b.load_checkins(c, "checkins");
  return b.build();
}

}  // namespace

TEST(SocialEdges, StoredSymmetrically) {
  const auto g = from_text("1\t2\n2\t3\n", "");
  EXPECT_EQ(g.friends(2), (std::vector<UserId>{1, 3}));
  EXPECT_EQ(g.friends(1), (std::vector<UserId>{2}));
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(SocialEdges, DuplicateLineIsIdempotent) {
  GraphBuilder b;
  std::istringstream in("1\t2\n2\t1\n");
  const auto rep = b.load_social_edges(in, "e");
  const auto g = b.build();
  EXPECT_EQ(g.friends(1), (std::vector<UserId>{2}));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(rep.duplicates, 1u);
}

TEST(SocialEdges, SelfLoopSkippedWithWarningCount) {
  GraphBuilder b;
  std::istringstream in("1\t1\n");
  const auto rep = b.load_social_edges(in, "e");
  EXPECT_EQ(rep.self_loops_skipped, 1u);
  EXPECT_EQ(b.build().edge_count(), 0u);
}

TEST(SocialEdges, MalformedLineReportsLineNumber) {
  GraphBuilder b;
  std::istringstream in("1\t2\n\nfoo\tbar\n");
  try {
    b.load_social_edges(in, "edges.tsv");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.source(), "edges.tsv");
  }
}

TEST(Checkins, AppendedAndDeduplicatedAsLocations) {
  const auto g = from_text("", "5\t2010-10-19T23:55:27Z\t30.1\t-97.7\t9\n5\t\t30.1\t-97.7\t9\n");
  EXPECT_EQ(g.checkins(5).size(), 2u);
  EXPECT_EQ(g.distinct_locations(5), (std::vector<LocationId>{9}));
  EXPECT_TRUE(g.has_user(5));  // users may appear before any edge
}

TEST(Checkins, ConflictingCoordinateIsDataError) {
  EXPECT_THROW(from_text("", "5\t\t30.1\t-97.7\t9\n6\t\t30.1001\t-97.7\t9\n"), DataError);
  // Within tolerance is accepted.
  EXPECT_NO_THROW(from_text("", "5\t\t30.1\t-97.7\t9\n6\t\t30.1000005\t-97.7\t9\n"));
}

TEST(Checkins, MalformedLine) {
  EXPECT_THROW(from_text("", "5\t\t30.1\t-97.7\n"), ParseError);
  EXPECT_THROW(from_text("", "5\t\tabc\t-97.7\t3\n"), ParseError);
}

TEST(Snapshot, RoundTripIsIdentical) {
  SyntheticGraphSpec spec;
  spec.users = 60;
  spec.places = 400;
  const auto g = synthetic_graph(spec, 7);
  std::ostringstream a;
  g.write_snapshot(a);
  std::istringstream in(a.str());
  const auto back = SocioSpatialGraph::read_snapshot(in, "snap");
  EXPECT_EQ(back, g);
  std::ostringstream b;
  back.write_snapshot(b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Snapshot, LoadingTwiceGivesSameBytes) {
  SyntheticGraphSpec spec;
  spec.users = 40;
  spec.places = 300;
  const auto g = synthetic_graph(spec, 3);
  std::ostringstream e, c;
  write_graph_tsv(g, e, c);
  auto load = [&] {
    GraphBuilder b;
    std::istringstream ei(e.str()), ci(c.str());
    b.load_social_edges(ei, "e");
    b.load_checkins(ci, "c");
    std::ostringstream out;
    b.build().write_snapshot(out);
    return out.str();
  };
  EXPECT_EQ(load(), load());
}

TEST(Snapshot, RejectsGarbage) {
  std::istringstream in("not a snapshot\n");
  EXPECT_THROW(SocioSpatialGraph::read_snapshot(in, "x"), ParseError);
}

TEST(CheckinGroup, Boundaries) {
  EXPECT_EQ(checkin_group_for_count(60), 100);
  EXPECT_EQ(checkin_group_for_count(10), 50);
  EXPECT_EQ(checkin_group_for_count(50), 50);
  EXPECT_EQ(checkin_group_for_count(51), 100);
  EXPECT_EQ(checkin_group_for_count(1000), 1000);
  EXPECT_EQ(checkin_group_for_count(1001), kNoGroup);
  EXPECT_EQ(checkin_group_for_count(9), kFilteredOut);
}

TEST(Stats, TwoUsersOneEdge) {
  const auto s = compute_stats(from_text("1\t2\n", ""));
  EXPECT_DOUBLE_EQ(s.avg_friends, 1.0);
  EXPECT_DOUBLE_EQ(s.avg_checkins, 0.0);
  EXPECT_DOUBLE_EQ(s.avg_friend_cocheckins, 0.0);
}

TEST(Stats, FriendCoCheckins) {
  // 1 and 2 share location 7; 3 is a friend of 1 elsewhere.
  const auto s = compute_stats(from_text("1\t2\n1\t3\n", "1\t\t0\t0\t7\n2\t\t0\t0\t7\n3\t\t1\t1\t8\n"));
  EXPECT_EQ(s.users, 3u);
  EXPECT_EQ(s.checkins, 3u);
  EXPECT_EQ(s.places, 2u);
  EXPECT_DOUBLE_EQ(s.avg_friend_cocheckins, 2.0 / 3.0);
}

TEST(QueryContextBuild, Errors) {
  const auto g = from_text("1\t2\n3\t4\n", "1\t\t0\t0\t7\n3\t\t0\t0\t8\n");
  EXPECT_THROW(build_query_context(g, 99, Metric::kPlanarEuclidean), NotFoundError);
  EXPECT_THROW(build_query_context(g, 1, Metric::kPlanarEuclidean), IneligibleQueryError);  // friend 2 has no check-ins
  EXPECT_THROW(build_query_context(g, 2, Metric::kPlanarEuclidean), IneligibleQueryError);  // no check-ins
}

TEST(QueryContextBuild, NormalizersMatchDoubleLoop) {
  SyntheticGraphSpec spec;
  spec.users = 80;
  spec.places = 600;
  const auto g = synthetic_graph(spec, 11);
  int checked = 0;
  for (UserId u : g.users()) {
    QueryContext ctx;
    try {
      ctx = build_query_context(g, u, Metric::kHaversineKm);
    } catch (const IneligibleQueryError&) {
      continue;
    }
    if (ctx.size() > 50) continue;
    ++checked;
    EXPECT_TRUE(std::is_sorted(ctx.sites.begin(), ctx.sites.begin() + static_cast<long>(ctx.size())));
    EXPECT_NEAR(ctx.max_d, oracle::max_d(ctx), 1e-9);
    for (int l = 0; l < static_cast<int>(ctx.size()); ++l) {
      EXPECT_NEAR(ctx.d_m[static_cast<std::size_t>(l)], oracle::d_m(ctx, l), 1e-9);
      for (std::size_t v = 0; v < ctx.friend_count(); ++v) {
        const double md = ctx.min_dist(l, static_cast<int>(v));
        EXPECT_NEAR(md, oracle::mindist(ctx, l, v), 1e-9);
        EXPECT_LE(md, ctx.d_m[static_cast<std::size_t>(l)]);
        const auto& vis = ctx.visitors(l);
        const bool at_l = std::find(vis.begin(), vis.end(), static_cast<int>(v)) != vis.end();
        if (at_l) EXPECT_EQ(md, 0.0);
      }
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(ToyFixture, Loads) {
  const auto ctx = load_toy_fixture_file(SSLS_TOY_FIXTURE);
  EXPECT_EQ(ctx.size(), 10u);
  EXPECT_EQ(ctx.friend_count(), 7u);
  EXPECT_DOUBLE_EQ(ctx.max_d, 15.0);
  const int p6 = 5;
  EXPECT_DOUBLE_EQ(ctx.d_m[p6], 9.5);
  std::vector<double> md;
  for (int v = 0; v < 7; ++v) md.push_back(ctx.min_dist(p6, v));
  EXPECT_EQ(md, (std::vector<double>{3.5, 3.5, 3.5, 0, 0, 0, 9.5}));
  EXPECT_EQ(ctx.visitors(p6).size(), 3u);
  // Friend a (index 0) checked in at p1, p2, p4, p7, p9.
  EXPECT_EQ(ctx.friend_sites[0], (std::vector<int>{0, 1, 3, 6, 8}));
}

TEST(ToyFixture, RejectsBadMatrices) {
  const std::string head = "fixture_version: 1\ncandidates: [x, y]\nfriends: [a]\nvisitor_sets:\n  x: [a]\n";
  {
    std::istringstream in(head + "distance_matrix:\n  - [0, 1]\n  - [2, 0]\n");
    EXPECT_THROW(load_toy_fixture(in), DataError);
  }
  {
    std::istringstream in(head + "distance_matrix:\n  - [0, -1]\n  - [-1, 0]\n");
    EXPECT_THROW(load_toy_fixture(in), DataError);
  }
  {
    std::istringstream in("fixture_version: 2\n");
    EXPECT_THROW(load_toy_fixture(in), ParseError);
  }
  {
    std::istringstream in(head + "distance_matrix:\n  - [0, 1]\n  - [1, 0]\n");
    const auto ctx = load_toy_fixture(in);
    EXPECT_DOUBLE_EQ(ctx.max_d, 1.0);
  }
}
