#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "hatemonger/dataset.hpp"
#include "hatemonger/error.hpp"
#include "hatemonger/ingest.hpp"

using namespace hm;

namespace {

ScoreTable scores_from(const std::string& text) {
  std::istringstream in(text);
  return parse_scores(in);
}

LabelSet labels_from(const std::string& text) {
  std::istringstream in(text);
  return parse_labels(in);
}

SocialGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<EdgeRecord> edges;
  for (auto [a, b] : list) edges.push_back({a, b, 0});
  return SocialGraph::build(edges);
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseScores, GroupsByUserInFileOrder) {
  const auto t = scores_from("u1,p1,0.9\nu2,p9,0.1\nu1,p2,0.3\n");
  ASSERT_EQ(t.user_count(), 2u);
  const auto s = t.scores(*t.find("u1"));
  EXPECT_EQ(std::vector<double>(s.begin(), s.end()), (std::vector<double>{0.9, 0.3}));
  EXPECT_EQ(t.total_posts(), 3u);
}

TEST(ParseScores, OutOfRangeNamesLine) {
  const auto msg = error_of([] { scores_from("u1,p1,1.5\n"); });
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("out of range"), std::string::npos) << msg;
}

TEST(ParseScores, NonNumericRejected) {
  const auto msg = error_of([] { scores_from("u1,p1,0.5\nu1,p2,high\n"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("non-numeric"), std::string::npos) << msg;
  EXPECT_THROW(scores_from("u1,p1,nan\n"), InputError);
  EXPECT_THROW(scores_from("u1,p1\n"), InputError);
}

TEST(ParseScores, EmptyFileIsValid) {
  EXPECT_EQ(scores_from("").user_count(), 0u);
}

TEST(ParseScores, RoundTripIsBitExact) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ScoreTable t;
    const std::size_t rows = gen() % 300;
    for (std::size_t i = 0; i < rows; ++i) {
      double s = unit(gen);
      if (i % 17 == 0) s = std::nextafter(1.0, 0.0);
      if (i % 23 == 0) s = 4.9e-324;
      t.add("user" + std::to_string(gen() % 25), "p" + std::to_string(i), s);
    }
    std::ostringstream out;
    write_scores(out, t);
    std::istringstream in(out.str());
    ASSERT_TRUE(parse_scores(in) == t);
  }
}

TEST(ParseLabels, Basic) {
  const auto l = labels_from("u1,1\nu2,0\n");
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.get("u1"), 1);
  EXPECT_EQ(l.get("u2"), 0);
  EXPECT_FALSE(l.get("u3").has_value());
}

TEST(ParseLabels, ConsistentDuplicateTolerated) {
  const auto l = labels_from("u1,1\nu1,1\n");
  EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(l.get("u1"), 1);
}

TEST(ParseLabels, ConflictRejected) {
  const auto msg = error_of([] { labels_from("u1,1\nu1,0\n"); });
  EXPECT_NE(msg.find("conflicting"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(ParseLabels, LabelOutsideDomain) {
  EXPECT_THROW(labels_from("u1,2\n"), InputError);
  EXPECT_THROW(labels_from("u1,yes\n"), InputError);
}

TEST(BindDataset, TwoUsers) {
  const auto bound = bind_dataset(graph_of({{"a", "b"}}), scores_from("a,p1,0.9\nb,p2,0.1\n"),
                                  labels_from("a,1\n"));
  const auto& d = bound.dataset;
  EXPECT_EQ(d.user_count(), 2u);
  EXPECT_EQ(d.labeled_nodes().size(), 1u);
  EXPECT_EQ(d.label(*d.graph().ids().find("a")), 1);
  EXPECT_FALSE(d.label(*d.graph().ids().find("b")).has_value());
  EXPECT_EQ(d.posts(*d.graph().ids().find("a"))[0], 0.9);
}

TEST(BindDataset, WccRestrictionDropsSmallerComponent) {
  BindPolicy policy;
  policy.restrict_to_wcc = true;
  const auto bound = bind_dataset(graph_of({{"a", "b"}, {"c", "d"}, {"d", "e"}}),
                                  scores_from("a,p,0.1\nb,p,0.2\nc,p,0.3\nd,p,0.4\ne,p,0.5\n"),
                                  labels_from("a,1\nc,0\n"), policy);
  EXPECT_EQ(bound.dataset.user_count(), 3u);
  EXPECT_EQ(bound.discards.users_dropped, 2u);
  EXPECT_EQ(bound.discards.labeled_dropped, 1u);
  EXPECT_EQ(bound.discards.posts_dropped, 2u);
  EXPECT_EQ(bound.dataset.total_posts(), 3u);
}

TEST(BindDataset, UnknownLabeledUser) {
  const auto msg = error_of([] {
    bind_dataset(graph_of({{"a", "b"}}), scores_from("a,p,0.1\n"), labels_from("c,1\n"));
  });
  EXPECT_NE(msg.find("unknown"), std::string::npos) << msg;
}

TEST(BindDataset, LabeledUserWithoutPostsNeedsPolicy) {
  const auto graph = graph_of({{"a", "b"}});
  const auto scores = scores_from("a,p,0.1\n");
  const auto labels = labels_from("b,1\n");
  EXPECT_THROW(bind_dataset(graph, scores, labels), InputError);
  BindPolicy policy;
  policy.allow_zero_post_users = true;
  const auto bound = bind_dataset(graph, scores, labels, policy);
  EXPECT_TRUE(bound.dataset.posts(*bound.dataset.graph().ids().find("b")).empty());
}

TEST(BindDataset, ScoreOnlyUsersBecomeIsolatedNodes) {
  const auto graph = graph_of({{"a", "b"}});
  const auto scores = scores_from("a,p,0.1\nloner,p,0.7\n");
  const auto kept = bind_dataset(graph, scores, LabelSet{});
  EXPECT_EQ(kept.dataset.user_count(), 3u);
  BindPolicy policy;
  policy.keep_score_only_users = false;
  const auto dropped = bind_dataset(graph, scores, LabelSet{}, policy);
  EXPECT_EQ(dropped.dataset.user_count(), 2u);
  EXPECT_EQ(dropped.discards.score_only_users_ignored, 1u);
  EXPECT_EQ(dropped.discards.posts_dropped, 1u);
}

TEST(BindDataset, NeverInventsUsers) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<EdgeRecord> edges;
    ScoreTable scores;
    std::set<std::string> universe;
    const std::size_t n = 2 + gen() % 40;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = "g" + std::to_string(gen() % n);
      const auto b = "g" + std::to_string(gen() % n);
      if (a == b) continue;
      edges.push_back({a, b, 0});
      universe.insert(a);
      universe.insert(b);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = (gen() % 2 ? "g" : "s") + std::to_string(gen() % n);
      scores.add(u, "p", 0.5);
      universe.insert(u);
    }
    BindPolicy policy;
    policy.restrict_to_wcc = gen() % 2;
    const auto bound = bind_dataset(SocialGraph::build(edges), scores, LabelSet{}, policy);
    for (const auto& name : bound.dataset.graph().ids().names()) {
      ASSERT_TRUE(universe.count(name)) << name;
    }
  }
}
