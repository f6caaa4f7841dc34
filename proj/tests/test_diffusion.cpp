#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <random>

#include "hatemonger/diffusion.hpp"
#include "hatemonger/error.hpp"
#include "oracles.hpp"

using namespace hm;

namespace {

SocialGraph indexed(std::size_t n, const std::vector<Edge>& edges) {
  IdMap ids;
  for (std::size_t i = 0; i < n; ++i) ids.intern("n" + std::to_string(i));
  return SocialGraph::from_indexed(std::move(ids), edges);
}

std::vector<Edge> random_edges(std::mt19937_64& gen, std::size_t n, double density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && unit(gen) < density) edges.push_back({u, v});
    }
  }
  return edges;
}

}  // namespace

TEST(DegrootStep, FollowerOfTwoFollowees) {
  // a follows b and c.
  const auto g = indexed(3, {{0, 1}, {0, 2}});
  const auto next = degroot_step(g, std::vector<double>{0.0, 1.0, 0.5}, Direction::followees);
  EXPECT_DOUBLE_EQ(next[0], 0.5);
  EXPECT_DOUBLE_EQ(next[1], 1.0);
  EXPECT_DOUBLE_EQ(next[2], 0.5);
}

TEST(DegrootStep, DirectionsDiffer) {
  const auto g = indexed(2, {{0, 1}});
  const std::vector<double> b{0.0, 1.0};
  EXPECT_EQ(degroot_step(g, b, Direction::followees), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(degroot_step(g, b, Direction::followers), (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(degroot_step(g, b, Direction::undirected), (std::vector<double>{0.5, 0.5}));
}

TEST(DegrootStep, IsolatedNodeKeepsBelief) {
  const auto g = indexed(3, {{0, 1}});
  const auto next = degroot_step(g, std::vector<double>{0.2, 0.4, 0.9}, Direction::undirected);
  EXPECT_EQ(next[2], 0.9);
}

TEST(DegrootStep, StaysInsideConvexHull) {
  std::mt19937_64 gen(51);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + gen() % 40;
    const auto g = indexed(n, random_edges(gen, n, unit(gen) * 0.3));
    std::vector<double> b(n);
    for (auto& x : b) x = unit(gen);
    const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
    for (auto d : {Direction::followees, Direction::followers, Direction::undirected}) {
      for (double x : degroot_step(g, b, d)) {
        ASSERT_GE(x, *lo);
        ASSERT_LE(x, *hi);
      }
    }
  }
}

TEST(DegrootStep, ConstantVectorIsFixedPoint) {
  std::mt19937_64 gen(52);
  const auto g = indexed(30, random_edges(gen, 30, 0.2));
  const std::vector<double> b(30, 0.375);
  for (auto d : {Direction::followees, Direction::followers, Direction::undirected}) {
    EXPECT_EQ(degroot_step(g, b, d), b);
  }
}

TEST(DegrootStep, MatchesDenseMatrixProduct) {
  std::mt19937_64 gen(53);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen() % 50;
    const auto edges = random_edges(gen, n, unit(gen) * 0.2);
    const auto g = indexed(n, edges);
    std::vector<double> b(n);
    for (auto& x : b) x = unit(gen);
    const auto out = degroot_step(g, b, Direction::followees);
    const auto in = degroot_step(g, b, Direction::followers);
    const auto ref_out = oracle::dense_degroot_step(n, edges, b, true);
    const auto ref_in = oracle::dense_degroot_step(n, edges, b, false);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_NEAR(out[i], ref_out[i], 1e-12);
      ASSERT_NEAR(in[i], ref_in[i], 1e-12);
    }
  }
}

TEST(DegrootStep, IdenticalAcrossThreadCounts) {
  std::mt19937_64 gen(54);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto g = indexed(300, random_edges(gen, 300, 0.05));
  std::vector<double> b(300);
  for (auto& x : b) x = unit(gen);
  const DiffusionGraph dg(g, Direction::undirected);
  const auto base = degroot_step(dg, b, Threads{1});
  for (unsigned t : {2u, 8u}) {
    const auto other = degroot_step(dg, b, Threads{t});
    ASSERT_EQ(std::memcmp(base.data(), other.data(), base.size() * sizeof(double)), 0);
  }
}

TEST(DegrootRun, StarConvergesToWeightedAverage) {
  // Undirected star, centre at 1, ten leaves at 0. The stationary weights are
  // proportional to 1 + degree, so the consensus is 11 / (11 + 10 * 2).
  std::vector<Edge> edges;
  for (NodeId leaf = 1; leaf <= 10; ++leaf) edges.push_back({0, leaf});
  const auto g = indexed(11, edges);
  std::vector<double> b(11, 0.0);
  b[0] = 1.0;
  DiffusionConfig c;
  c.direction = Direction::undirected;
  c.max_iters = 10000;
  c.tol = 1e-13;
  const auto r = degroot_run(g, b, c);
  EXPECT_TRUE(r.converged);
  for (double x : r.beliefs) EXPECT_NEAR(x, 11.0 / 31.0, 1e-10);

  // Same value from repeated dense steps.
  std::vector<Edge> reversed;
  for (const auto& e : edges) reversed.push_back({e.dst, e.src});
  auto both = edges;
  both.insert(both.end(), reversed.begin(), reversed.end());
  auto dense = b;
  for (int i = 0; i < 2000; ++i) dense = oracle::dense_degroot_step(11, both, dense, true);
  for (double x : dense) EXPECT_NEAR(x, 11.0 / 31.0, 1e-10);
}

TEST(DegrootRun, ChangesDecreaseAndStopAtTolerance) {
  std::mt19937_64 gen(55);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto g = indexed(100, random_edges(gen, 100, 0.1));
  std::vector<double> b(100);
  for (auto& x : b) x = unit(gen);
  DiffusionConfig c;
  c.direction = Direction::undirected;
  c.max_iters = 1000;
  const auto r = degroot_run(g, b, c);
  ASSERT_TRUE(r.converged);
  ASSERT_EQ(r.changes.size(), r.iterations);
  EXPECT_LT(r.changes.back(), c.tol);
  for (std::size_t i = 0; i + 1 < r.changes.size(); ++i) EXPECT_GE(r.changes[i], 0.0);
  for (std::size_t i = 0; i + 1 < r.changes.size(); ++i) EXPECT_GE(r.changes[i], c.tol);
}

TEST(DegrootRun, MaxItersCapsWork) {
  const auto g = indexed(2, {{0, 1}});
  DiffusionConfig c;
  c.max_iters = 3;
  c.tol = 1e-12;
  const auto r = degroot_run(g, {0.0, 1.0}, c);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_FALSE(r.converged);
  EXPECT_DOUBLE_EQ(r.beliefs[0], 0.875);
}

TEST(DegrootInit, FractionAndBinarySeeds) {
  ScoreTable scores;
  for (double s : {0.9, 0.8, 0.1, 0.7}) scores.add("a", "p", s);
  scores.register_user("b");
  const auto d = bind_dataset(SocialGraph{}, scores, LabelSet{}).dataset;
  AggregationConfig agg;
  agg.tau_fixed = 3;
  EXPECT_EQ(degroot_init(d, agg, SeedMode::fraction), (std::vector<double>{0.75, 0.0}));
  EXPECT_EQ(degroot_init(d, agg, SeedMode::binary), (std::vector<double>{1.0, 0.0}));
  agg.tau_fixed = 4;
  EXPECT_EQ(degroot_init(d, agg, SeedMode::binary), (std::vector<double>{0.0, 0.0}));
}

TEST(DegrootClassify, ThresholdInclusive) {
  EXPECT_EQ(degroot_classify(std::vector<double>{0.49, 0.5, 0.9}, 0.5),
            (std::vector<std::uint8_t>{0, 1, 1}));
}

TEST(DiffusionConfig, Validation) {
  DiffusionConfig c;
  c.tol = -1.0;
  EXPECT_THROW(c.validate(), InputError);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), InputError);
  EXPECT_THROW(parse_direction("sideways"), InputError);
  EXPECT_EQ(parse_direction("followers"), Direction::followers);
  EXPECT_EQ(parse_seed_mode("binary"), SeedMode::binary);
}
