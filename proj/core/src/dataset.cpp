#include "hatemonger/dataset.hpp"

#include "hatemonger/error.hpp"

namespace hm {

Dataset::Dataset(SocialGraph graph, std::vector<std::uint64_t> post_offsets,
                 std::vector<double> scores, std::vector<std::int8_t> labels)
    : graph_(std::move(graph)),
      post_offsets_(std::move(post_offsets)),
      scores_(std::move(scores)),
      labels_(std::move(labels)) {
  const std::size_t n = graph_.node_count();
  if (post_offsets_.size() != n + 1 || labels_.size() != n ||
      post_offsets_.back() != scores_.size()) {
    throw InputError("Dataset: score offsets or labels do not match the graph");
  }
}

std::vector<NodeId> Dataset::labeled_nodes() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < labels_.size(); ++u) {
    if (labels_[u] >= 0) out.push_back(u);
  }
  return out;
}

Json DiscardSummary::to_json() const {
  auto j = Json::object();
  j.set("users_before", users_before);
  j.set("users_kept", users_kept);
  j.set("users_dropped", users_dropped);
  j.set("labeled_dropped", labeled_dropped);
  j.set("posts_dropped", posts_dropped);
  j.set("score_only_users_ignored", score_only_users_ignored);
  return j;
}

BoundDataset bind_dataset(const SocialGraph& graph, const ScoreTable& scores,
                          const LabelSet& labels, const BindPolicy& policy) {
  BoundDataset out;
  auto& summary = out.discards;

  IdMap ids;
  ids.reserve(graph.node_count() + scores.user_count());
  for (const auto& name : graph.ids().names()) ids.intern(name);
  for (const auto& name : scores.users()) {
    if (ids.find(name)) continue;
    if (policy.keep_score_only_users) {
      ids.intern(name);
    } else {
      ++summary.score_only_users_ignored;
    }
  }

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& name = labels.users()[i];
    const bool in_universe = ids.find(name).has_value();
    const auto score_row = scores.find(name);
    if (!in_universe && !score_row) {
      throw InputError("labeled user '" + name + "' is unknown (not in edges or scores)");
    }
    const bool has_posts = score_row && !scores.scores(*score_row).empty();
    if (in_universe && !has_posts && !policy.allow_zero_post_users) {
      throw InputError("labeled user '" + name +
                       "' has no scored posts (enable zero-post users to allow)");
    }
  }

  SocialGraph full = ids.size() == graph.node_count()
                         ? graph
                         : SocialGraph::from_indexed(std::move(ids), graph.edges());
  summary.users_before = full.node_count();

  SocialGraph bound = policy.restrict_to_wcc && !full.empty() ? largest_wcc(full) : std::move(full);
  summary.users_kept = bound.node_count();
  summary.users_dropped = summary.users_before - summary.users_kept;

  const std::size_t n = bound.node_count();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<double> flat;
  std::vector<std::int8_t> label_vec(n, -1);
  std::vector<bool> kept_score_row(scores.user_count(), false);
  for (NodeId u = 0; u < n; ++u) {
    const auto& name = bound.ids().name(u);
    if (auto row = scores.find(name)) {
      const auto s = scores.scores(*row);
      flat.insert(flat.end(), s.begin(), s.end());
      kept_score_row[*row] = true;
    }
    offsets[u + 1] = flat.size();
    if (auto l = labels.get(name)) label_vec[u] = static_cast<std::int8_t>(*l);
  }
  for (std::size_t r = 0; r < scores.user_count(); ++r) {
    if (!kept_score_row[r]) summary.posts_dropped += scores.scores(r).size();
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!bound.ids().find(labels.users()[i])) ++summary.labeled_dropped;
  }

  out.dataset = Dataset(std::move(bound), std::move(offsets), std::move(flat), std::move(label_vec));
  return out;
}

}  // namespace hm
