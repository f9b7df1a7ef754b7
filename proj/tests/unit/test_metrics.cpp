#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ssls/metrics.hpp"
#include "ssls/scoring.hpp"

using namespace ssls;

namespace {

const QueryContext& toy() {
  static const QueryContext ctx = load_toy_fixture_file(SSLS_TOY_FIXTURE);
  return ctx;
}

constexpr int p(int label) { return label - 1; }

}  // namespace

TEST(Precision, Basics) {
  const std::vector<LocationId> a{3, 1, 2}, b{2, 3, 9};
  EXPECT_DOUBLE_EQ(precision(a, a), 1.0);
  EXPECT_DOUBLE_EQ(precision(a, b), 2.0 / 3.0);
  const std::vector<LocationId> short_set{1};
  EXPECT_THROW(precision(a, short_set), DomainError);
}

TEST(SocialEntropy, EqualCountsAreLogK) {
  // p6 and p7 both have three visitors.
  const std::vector<int> s{p(6), p(7)};
  EXPECT_EQ(social_entropy(toy(), s), 1.0);
  // Ten synthetic locations with the same count.
  SyntheticContextSpec spec;
  spec.candidates = 6;
  auto ctx = synthetic_context(spec, 1);
  for (std::size_t i = 0; i < 6; ++i) ctx.site_visitors[i] = {0, 1};
  for (int k = 1; k <= 6; ++k) {
    std::vector<int> sel(static_cast<std::size_t>(k));
    std::iota(sel.begin(), sel.end(), 0);
    EXPECT_EQ(social_entropy(ctx, sel), std::log2(static_cast<double>(k))) << k;
  }
}

TEST(SocialEntropy, SkewedAndDegenerate) {
  // p8 has four visitors, p4 one: -(0.8 log 0.8 + 0.2 log 0.2).
  const std::vector<int> s{p(8), p(4)};
  EXPECT_NEAR(social_entropy(toy(), s), 0.7219280948873623, 1e-12);
  EXPECT_FALSE(entropy_degenerate(toy(), s));
  SyntheticContextSpec spec;
  auto ctx = synthetic_context(spec, 2);
  ctx.site_visitors[0].clear();
  ctx.site_visitors[1].clear();
  const std::vector<int> empty_pair{0, 1};
  EXPECT_EQ(social_entropy(ctx, empty_pair), 0.0);
  EXPECT_TRUE(entropy_degenerate(ctx, empty_pair));
}

TEST(SocialCoverage, MonotoneInTheta) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ctx = oracle::random_context(rng, 6, 15);
    std::vector<int> s{0, static_cast<int>(ctx.candidate_count) - 1};
    double last = -1.0;
    for (double theta = 0.0; theta <= 150.0; theta += 7.5) {
      const double sc = social_coverage(ctx, s, theta);
      EXPECT_GE(sc, last);
      EXPECT_GE(sc, 0.0);
      EXPECT_LE(sc, 100.0);
      last = sc;
    }
    EXPECT_EQ(last, 100.0);
  }
  EXPECT_THROW(social_coverage(toy(), std::vector<int>{0}, -1.0), DomainError);
}

TEST(SocialCoverage, ToyCountsAtZeroRadius) {
  // Radius 0 covers exactly the friends who visited a member.
  const std::vector<int> s{p(7), p(5)};  // visitors {a,b,c} and {e,f}
  EXPECT_NEAR(social_coverage(toy(), s, 0.0), 100.0 * 5.0 / 7.0, 1e-12);
}

TEST(Mmd, SupersetNeverIncreases) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ctx = oracle::random_context(rng, 6, 15);
    const double alpha = oracle::kGrid[trial % 5];
    std::vector<int> order(ctx.candidate_count);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> s;
    double last_sp = INFINITY, last_ss = INFINITY;
    for (int l : order) {
      s.push_back(l);
      const double sp = mmd(ctx, s, MmdMode::kSpatial, alpha);
      const double ss = mmd(ctx, s, MmdMode::kSocioSpatial, alpha);
      EXPECT_LE(sp, last_sp);
      EXPECT_LE(ss, last_ss);
      last_sp = sp;
      last_ss = ss;
    }
  }
}

TEST(Mmd, ZeroWhenEveryFriendSiteSelected) {
  const auto& ctx = toy();
  std::vector<int> all(ctx.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(mmd(ctx, all, MmdMode::kSpatial, 0.5), 0.0);
  EXPECT_EQ(mmd(ctx, all, MmdMode::kSocioSpatial, 0.5), 0.0);
  EXPECT_THROW(mmd(ctx, std::vector<int>{}, MmdMode::kSpatial, 0.5), DomainError);
}
