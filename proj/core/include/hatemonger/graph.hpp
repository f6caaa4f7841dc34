#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hm {

using NodeId = std::uint32_t;

/// Directed edge `src -> dst`: src follows dst.
struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One textual edge as read from an edge file. `line` is 1-based, 0 when the
/// edge did not come from a file.
struct EdgeRecord {
  std::string src;
  std::string dst;
  std::size_t line = 0;
};

/// Bijection between external user ids and dense node indices.
class IdMap {
 public:
  /// Returns the existing index for `name` or assigns the next one.
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  std::span<const std::string> names() const { return names_; }
  void reserve(std::size_t n);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> index_;
};

/// Immutable directed follow graph in compressed sparse row form, holding
/// both the out (followee) and in (follower) adjacency. Every neighbor list
/// is sorted ascending and free of duplicates.
class SocialGraph {
 public:
  SocialGraph() = default;

  /// Builds from textual pairs. Duplicate edges collapse; self-loops and
  /// empty ids are rejected with the offending line. `isolated` registers
  /// additional users that may have no edges.
  static SocialGraph build(std::span<const EdgeRecord> edges,
                           std::span<const std::string> isolated = {});

  /// Builds from already-interned edges. Consumes `edges`.
  static SocialGraph from_indexed(IdMap ids, std::vector<Edge> edges);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }
  bool empty() const { return node_count() == 0; }

  std::span<const NodeId> followees(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> followers(NodeId u) const {
    return {in_sources_.data() + in_offsets_[u], in_sources_.data() + in_offsets_[u + 1]};
  }
  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  std::size_t in_degree(NodeId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }

  const IdMap& ids() const { return ids_; }

  /// All edges in (src, dst) lexicographic order.
  std::vector<Edge> edges() const;

 private:
  IdMap ids_;
  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

/// Undirected simple view: each node's neighbors are the union of its
/// followers and followees, sorted and deduplicated.
class UndirectedView {
 public:
  explicit UndirectedView(const SocialGraph& g);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  /// Number of undirected edges (mutual follows count once).
  std::size_t edge_count() const { return targets_.size() / 2; }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Parses `src_id,dst_id` lines. Blank and `#` lines are skipped; ids are
/// trimmed of surrounding whitespace.
std::vector<EdgeRecord> read_edge_list(std::istream& in);

/// Weak component label per node. Components are numbered in order of their
/// smallest node index.
struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::size_t> sizes;
  std::size_t count() const { return sizes.size(); }
};

Components weak_components(const SocialGraph& g);

/// Subgraph induced by `keep` (any order, no duplicates). Surviving nodes are
/// renumbered in increasing original index and keep their external ids.
SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> keep);

/// Nodes of the largest weak component, ascending. Ties go to the component
/// holding the smallest node index.
std::vector<NodeId> largest_wcc_nodes(const SocialGraph& g);

/// Induced subgraph on the largest weakly connected component.
SocialGraph largest_wcc(const SocialGraph& g);

}  // namespace hm
