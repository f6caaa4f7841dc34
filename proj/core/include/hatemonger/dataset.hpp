#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hatemonger/graph.hpp"
#include "hatemonger/ingest.hpp"
#include "hatemonger/report.hpp"

namespace hm {

/// Graph, scores and labels bound to one node-index space. Node i's posts are
/// `posts(i)`; its label is `label(i)` (nullopt when unlabeled).
class Dataset {
 public:
  Dataset() = default;
  /// `post_offsets` has node_count + 1 entries indexing into `scores`;
  /// `labels` holds -1 for unlabeled nodes.
  Dataset(SocialGraph graph, std::vector<std::uint64_t> post_offsets, std::vector<double> scores,
          std::vector<std::int8_t> labels);

  const SocialGraph& graph() const { return graph_; }
  std::size_t user_count() const { return graph_.node_count(); }
  std::size_t total_posts() const { return scores_.size(); }

  std::span<const double> posts(NodeId u) const {
    return {scores_.data() + post_offsets_[u], scores_.data() + post_offsets_[u + 1]};
  }
  std::optional<int> label(NodeId u) const {
    return labels_[u] < 0 ? std::nullopt : std::optional<int>(labels_[u]);
  }
  /// Labeled nodes in ascending index order.
  std::vector<NodeId> labeled_nodes() const;

 private:
  SocialGraph graph_;
  std::vector<std::uint64_t> post_offsets_{0};
  std::vector<double> scores_;
  std::vector<std::int8_t> labels_;
};

struct BindPolicy {
  /// Keep only the largest weakly connected component.
  bool restrict_to_wcc = false;
  /// Allow labeled users without any post; their post features are zero.
  bool allow_zero_post_users = false;
  /// Users that have scores but no edges join the graph as isolated nodes.
  bool keep_score_only_users = true;
};

struct DiscardSummary {
  std::size_t users_before = 0;
  std::size_t users_kept = 0;
  std::size_t users_dropped = 0;
  std::size_t labeled_dropped = 0;
  std::size_t posts_dropped = 0;
  std::size_t score_only_users_ignored = 0;

  Json to_json() const;
};

struct BoundDataset {
  Dataset dataset;
  DiscardSummary discards;
};

/// Aligns scores and labels to the graph's node indices. Graph nodes keep
/// their indices; score-only users are appended in score-table order.
/// Throws InputError for labeled users missing from every input, or for
/// labeled users without posts unless the policy allows them.
BoundDataset bind_dataset(const SocialGraph& graph, const ScoreTable& scores,
                          const LabelSet& labels, const BindPolicy& policy = {});

}  // namespace hm
