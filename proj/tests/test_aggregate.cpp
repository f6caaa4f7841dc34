#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hatemonger/aggregate.hpp"
#include "hatemonger/error.hpp"
#include "hatemonger/logreg.hpp"
#include "oracles.hpp"

using namespace hm;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

/// Graph around `u`: followers f0..f3, followees e0..e1. Users listed in
/// `hateful` post one 0.9 score, everyone else one 0.1 score.
Dataset ego_dataset(const std::set<std::string>& hateful) {
  std::vector<EdgeRecord> edges;
  for (int i = 0; i < 4; ++i) edges.push_back({"f" + std::to_string(i), "u", 0});
  for (int i = 0; i < 2; ++i) edges.push_back({"u", "e" + std::to_string(i), 0});
  const auto graph = SocialGraph::build(edges);
  ScoreTable scores;
  for (const auto& name : graph.ids().names()) {
    scores.add(name, "p", hateful.count(name) ? 0.9 : 0.1);
  }
  scores.register_user("alone");
  BindPolicy policy;
  return bind_dataset(graph, scores, LabelSet{}, policy).dataset;
}

}  // namespace

TEST(FixedCount, Examples) {
  const std::vector<double> s{0.9, 0.3, 0.6};
  EXPECT_EQ(fixed_count(s, 0.5), 2u);
  EXPECT_EQ(fixed_count(std::vector<double>{0.5}, 0.5), 1u);
  EXPECT_EQ(fixed_count({}, 0.5), 0u);
}

TEST(FixedClassify, Examples) {
  const std::vector<double> s{0.9, 0.3, 0.6};
  EXPECT_EQ(fixed_classify(s, 0.5, 1), 1);
  EXPECT_EQ(fixed_classify(s, 0.5, 3), 0);
  EXPECT_EQ(fixed_classify({}, 0.5, 1), 0);
}

TEST(FixedCount, MonotoneInThreshold) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(gen() % 60);
    for (auto& x : s) x = unit(gen);
    std::size_t previous = s.size() + 1;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
      const auto c = fixed_count(s, t);
      ASSERT_LE(c, previous);
      previous = c;
    }
  }
}

TEST(Relational, NeighborMeans) {
  const auto d = ego_dataset({"u", "f0", "f2"});
  AggregationConfig c;
  c.tau_fixed = 1;
  const auto u = *d.graph().ids().find("u");
  const auto f = relational_features(d, u, c);
  EXPECT_EQ(f[0], 1.0);
  EXPECT_EQ(f[1], 0.5);
  EXPECT_EQ(f[2], 0.0);
}

TEST(Relational, IsolatedUserIsAllZero) {
  const auto d = ego_dataset({});
  AggregationConfig c;
  c.tau_fixed = 1;
  const auto f = relational_features(d, *d.graph().ids().find("alone"), c);
  EXPECT_EQ(f, (std::array<double, 3>{0.0, 0.0, 0.0}));
}

TEST(Relational, ReportedEchoWeightsCombineLinearly) {
  // alpha, beta, gamma learned on Echo; the score before bias and sigmoid
  // is their dot product with [C_F, follower mean, followee mean].
  const auto d = ego_dataset({"u", "f0", "f2"});
  AggregationConfig c;
  c.tau_fixed = 1;
  const auto f = relational_features(d, *d.graph().ids().find("u"), c);
  const double score = 0.608 * f[0] + 0.776 * f[1] + 1.467 * f[2];
  EXPECT_NEAR(score, 0.996, 1e-12);
}

TEST(Relational, UnknownUser) {
  const auto d = ego_dataset({});
  EXPECT_THROW(relational_features(d, 1000, AggregationConfig{}), InputError);
}

TEST(BinHistogram, Examples) {
  EXPECT_EQ(bin_histogram(std::vector<double>{0.05, 0.25, 0.95}, 5),
            (std::vector<double>{1, 1, 0, 0, 1}));
  // 0.15 * 5 = 0.75 lies in the first half-open bin.
  EXPECT_EQ(bin_histogram(std::vector<double>{0.05, 0.15, 0.95}, 5),
            (std::vector<double>{2, 0, 0, 0, 1}));
  EXPECT_EQ(bin_histogram(std::vector<double>{0.05, 0.15, 0.95}, 10),
            (std::vector<double>{1, 1, 0, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(bin_histogram(std::vector<double>{1.0}, 5), (std::vector<double>{0, 0, 0, 0, 1}));
  EXPECT_EQ(bin_histogram(std::vector<double>{0.49, 0.5}, 2), (std::vector<double>{1, 1}));
  EXPECT_THROW(bin_histogram(std::vector<double>{0.5}, 1), InputError);
}

TEST(QuantileHistogram, Examples) {
  EXPECT_EQ(quantile_histogram(std::vector<double>{0.1, 0.2, 0.3}, 2),
            (std::vector<double>{1, 2}));
  EXPECT_EQ(quantile_histogram(std::vector<double>{0.5, 0.5}, 4),
            (std::vector<double>{2, 0, 0, 0}));
  EXPECT_EQ(quantile_histogram(std::vector<double>{0.0, 1.0}, 2), (std::vector<double>{1, 1}));
  EXPECT_THROW(quantile_histogram({}, 3), DegenerateDataError);
}

TEST(Softmax, Examples) {
  for (double v : softmax(std::vector<double>{0, 0, 0})) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
  const auto s = softmax(std::vector<double>{2, 0, 0});
  const double e2 = std::exp(2.0);
  EXPECT_NEAR(s[0], e2 / (e2 + 2.0), 1e-15);
  EXPECT_NEAR(s[0], 0.78699, 1e-5);
  EXPECT_NEAR(s[1], 0.10650, 1e-5);
  const auto big = softmax(std::vector<double>{1000, 0});
  EXPECT_TRUE(std::isfinite(big[0]));
  EXPECT_NEAR(big[0], 1.0, 1e-15);
  EXPECT_NEAR(big[1], 0.0, 1e-15);
}

TEST(BuildFeatures, FixedRowIsCount) {
  ScoreTable scores;
  for (int i = 0; i < 7; ++i) scores.add("a", "p", 0.8);
  scores.add("a", "p", 0.2);
  const auto d = bind_dataset(SocialGraph{}, scores, LabelSet{}).dataset;
  const auto fm = build_features(d, FeatureMode::fixed, AggregationConfig{});
  EXPECT_EQ(fm.schema, (std::vector<std::string>{"hateful_posts"}));
  EXPECT_EQ(vec(fm.row(0)), (std::vector<double>{7}));
}

TEST(BuildFeatures, SchemaLengths) {
  EXPECT_EQ(feature_schema(FeatureMode::multimodal, 10).size(), 23u);
  EXPECT_EQ(feature_schema(FeatureMode::bins_quantiles, 10).size(), 20u);
  EXPECT_EQ(feature_schema(FeatureMode::relational, 10).size(), 3u);
  EXPECT_EQ(feature_schema(FeatureMode::quantiles, 4).front(), "qbin_0");
}

TEST(BuildFeatures, BinsRowIsSoftmaxedHistogram) {
  ScoreTable scores;
  for (double s : {0.05, 0.25, 0.95}) scores.add("a", "p", s);
  const auto d = bind_dataset(SocialGraph{}, scores, LabelSet{}).dataset;
  AggregationConfig c;
  c.k_bins = 5;
  const auto row = vec(build_features(d, FeatureMode::bins, c).row(0));
  const double e = std::exp(1.0);
  const double z = 3.0 * e + 2.0;
  const std::vector<double> expected{e / z, e / z, 1 / z, 1 / z, e / z};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(row[i], expected[i], 1e-15);
  EXPECT_NEAR(row[0], 0.2676, 1e-4);
  EXPECT_NEAR(row[2], 0.0985, 1e-4);
}

TEST(BuildFeatures, ZeroPostUserHasZeroPostBlocks) {
  std::vector<EdgeRecord> edges{{"quiet", "loud", 0}};
  ScoreTable scores;
  for (int i = 0; i < 5; ++i) scores.add("loud", "p", 0.9);
  const auto d = bind_dataset(SocialGraph::build(edges), scores, LabelSet{}).dataset;
  AggregationConfig c;
  c.tau_fixed = 1;
  c.k_bins = 3;
  const auto fm = build_features(d, FeatureMode::multimodal, c);
  const auto quiet = vec(fm.row(*d.graph().ids().find("quiet")));
  // Own count and histograms are zero; the followee fraction still sees "loud".
  EXPECT_EQ(quiet, (std::vector<double>{0, 0, 1, 0, 0, 0, 0, 0, 0}));
}

TEST(BuildFeatures, RawHistogramsSumToPostCount) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_dataset(gen, 80, 40);
    AggregationConfig c;
    c.softmax_histograms = false;
    c.k_bins = 2 + gen() % 12;
    const auto fm = build_features(d, FeatureMode::bins_quantiles, c);
    for (std::size_t r = 0; r < fm.rows(); ++r) {
      const auto row = fm.row(r);
      const double bins = std::accumulate(row.begin(), row.begin() + c.k_bins, 0.0);
      const double qbins = std::accumulate(row.begin() + c.k_bins, row.end(), 0.0);
      const auto posts = static_cast<double>(d.posts(fm.nodes[r]).size());
      ASSERT_EQ(bins, posts);
      ASSERT_EQ(qbins, posts);
    }
  }
}

TEST(BuildFeatures, SoftmaxBlocksSumToOne) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = oracle::random_dataset(gen, 80, 40);
    AggregationConfig c;
    c.k_bins = 2 + gen() % 12;
    const auto fm = build_features(d, FeatureMode::multimodal, c);
    for (std::size_t r = 0; r < fm.rows(); ++r) {
      if (d.posts(fm.nodes[r]).empty()) continue;
      const auto row = fm.row(r);
      const double bins = std::accumulate(row.begin() + 3, row.begin() + 3 + c.k_bins, 0.0);
      const double qbins = std::accumulate(row.begin() + 3 + c.k_bins, row.end(), 0.0);
      ASSERT_NEAR(bins, 1.0, 1e-9);
      ASSERT_NEAR(qbins, 1.0, 1e-9);
    }
  }
}

TEST(BuildFeatures, MatchesNaiveReference) {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 25; ++trial) {
    const auto d = oracle::random_dataset(gen, 200, 50);
    AggregationConfig c;
    c.k_bins = std::vector<std::size_t>{2, 5, 10}[gen() % 3];
    c.tau_fixed = 1 + gen() % 4;
    c.softmax_histograms = gen() % 4 != 0;
    for (auto mode : {FeatureMode::fixed, FeatureMode::relational, FeatureMode::bins,
                      FeatureMode::quantiles, FeatureMode::multimodal}) {
      const auto fm = build_features(d, mode, c);
      const auto ref = oracle::features(d, mode, c);
      ASSERT_EQ(fm.rows(), ref.size());
      for (std::size_t r = 0; r < fm.rows(); ++r) {
        ASSERT_EQ(ref[r].size(), fm.cols());
        for (std::size_t j = 0; j < fm.cols(); ++j) {
          ASSERT_NEAR(fm.row(r)[j], ref[r][j], 1e-12)
              << to_string(mode) << " row " << r << " col " << fm.schema[j];
        }
      }
    }
  }
}

TEST(BuildFeatures, IdenticalAcrossThreadCounts) {
  std::mt19937_64 gen(45);
  const auto d = oracle::random_dataset(gen, 200, 50);
  const auto base = build_features(d, FeatureMode::multimodal, {}, Threads{1});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto other = build_features(d, FeatureMode::multimodal, {}, Threads{t});
    ASSERT_EQ(other.values.size(), base.values.size());
    ASSERT_EQ(std::memcmp(other.values.data(), base.values.data(),
                          base.values.size() * sizeof(double)),
              0);
  }
}

TEST(BuildFeatures, CsvExport) {
  ScoreTable scores;
  scores.add("a", "p", 0.75);
  const auto d = bind_dataset(SocialGraph{}, scores, LabelSet{}).dataset;
  AggregationConfig c;
  c.k_bins = 2;
  c.softmax_histograms = false;
  std::ostringstream out;
  write_features_csv(out, build_features(d, FeatureMode::bins, c), d.graph().ids());
  EXPECT_EQ(out.str(), "user_id,bin_0,bin_1\na,0,1\n");
}

TEST(Relational, RankingInvariantUnderCommonScaling) {
  // Standardization absorbs a positive rescaling of the relational block, so
  // the refitted model ranks users identically.
  std::mt19937_64 gen(46);
  const auto d = oracle::random_dataset(gen, 200, 50);
  AggregationConfig c;
  c.tau_fixed = 2;
  const auto fm = build_features(d, FeatureMode::relational, c);
  const auto labeled = d.labeled_nodes();
  std::vector<double> x, scaled;
  std::vector<int> y;
  for (NodeId u : labeled) {
    for (double v : fm.row(u)) {
      x.push_back(v);
      scaled.push_back(v * 7.5);
    }
    y.push_back(*d.label(u));
  }
  const TrainConfig tc;
  const auto m1 = train_logreg({x, labeled.size(), 3}, y, tc);
  const auto m2 = train_logreg({scaled, labeled.size(), 3}, y, tc);
  std::vector<std::size_t> order1(labeled.size()), order2(labeled.size());
  std::iota(order1.begin(), order1.end(), 0);
  std::iota(order2.begin(), order2.end(), 0);
  auto p1 = [&](std::size_t i) { return m1.predict_proba(std::span(x).subspan(i * 3, 3)); };
  auto p2 = [&](std::size_t i) { return m2.predict_proba(std::span(scaled).subspan(i * 3, 3)); };
  std::stable_sort(order1.begin(), order1.end(), [&](auto a, auto b) { return p1(a) < p1(b); });
  std::stable_sort(order2.begin(), order2.end(), [&](auto a, auto b) { return p2(a) < p2(b); });
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    ASSERT_NEAR(p1(order1[i]), p2(order2[i]), 1e-9);
  }
}
