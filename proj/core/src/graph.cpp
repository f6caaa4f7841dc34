#include "hatemonger/graph.hpp"

#include <algorithm>
#include <istream>

#include "hatemonger/error.hpp"
#include "text.hpp"

namespace hm {

NodeId IdMap::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> IdMap::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

void IdMap::reserve(std::size_t n) {
  names_.reserve(n);
  index_.reserve(n);
}

namespace {

std::string edge_context(const EdgeRecord& e, std::size_t position) {
  return e.line > 0 ? "line " + std::to_string(e.line) : "edge #" + std::to_string(position + 1);
}

// Fills offsets/targets from edges already sorted by (key, value).
template <typename Key, typename Value>
void fill_csr(std::size_t n, const std::vector<Edge>& edges, Key key, Value value,
              std::vector<std::uint64_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) targets[cursor[key(e)]++] = value(e);
}

}  // namespace

SocialGraph SocialGraph::build(std::span<const EdgeRecord> edges,
                               std::span<const std::string> isolated) {
  IdMap ids;
  std::vector<Edge> indexed;
  indexed.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.src.empty() || e.dst.empty()) {
      throw InputError(edge_context(e, i) + ": empty user id");
    }
    if (e.src == e.dst) {
      throw InputError(edge_context(e, i) + ": self-loop on '" + e.src + "'");
    }
    const NodeId s = ids.intern(e.src);
    const NodeId d = ids.intern(e.dst);
    indexed.push_back({s, d});
  }
  for (const auto& name : isolated) {
    if (name.empty()) throw InputError("isolated user with empty id");
    ids.intern(name);
  }
  return from_indexed(std::move(ids), std::move(indexed));
}

SocialGraph SocialGraph::from_indexed(IdMap ids, std::vector<Edge> edges) {
  const std::size_t n = ids.size();
  for (const auto& e : edges) {
    if (e.src >= n || e.dst >= n) throw InputError("edge endpoint outside the id map");
    if (e.src == e.dst) throw InputError("self-loop on '" + ids.name(e.src) + "'");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  SocialGraph g;
  g.ids_ = std::move(ids);
  fill_csr(
      n, edges, [](const Edge& e) { return e.src; }, [](const Edge& e) { return e.dst; },
      g.out_offsets_, g.out_targets_);
  // Edges are sorted by src, so each follower list comes out ascending.
  fill_csr(
      n, edges, [](const Edge& e) { return e.dst; }, [](const Edge& e) { return e.src; },
      g.in_offsets_, g.in_sources_);
  return g;
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : followees(u)) out.push_back({u, v});
  }
  return out;
}

UndirectedView::UndirectedView(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  offsets_.assign(n + 1, 0);
  auto merge_unique = [&](NodeId u, auto&& emit) {
    auto a = g.followees(u);
    auto b = g.followers(u);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      NodeId next;
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        next = a[i++];
      } else if (i == a.size() || b[j] < a[i]) {
        next = b[j++];
      } else {
        next = a[i];
        ++i;
        ++j;
      }
      emit(next);
    }
  };
  for (NodeId u = 0; u < n; ++u) {
    std::uint64_t d = 0;
    merge_unique(u, [&](NodeId) { ++d; });
    offsets_[u + 1] = offsets_[u] + d;
  }
  targets_.resize(offsets_[n]);
  for (NodeId u = 0; u < n; ++u) {
    auto pos = offsets_[u];
    merge_unique(u, [&](NodeId v) { targets_[pos++] = v; });
  }
}

std::vector<EdgeRecord> read_edge_list(std::istream& in) {
  std::vector<EdgeRecord> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 2) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'src_id,dst_id'");
    }
    EdgeRecord rec{std::string(fields[0]), std::string(fields[1]), line_no};
    if (rec.src.empty() || rec.dst.empty()) {
      throw InputError("line " + std::to_string(line_no) + ": empty user id");
    }
    if (rec.src == rec.dst) {
      throw InputError("line " + std::to_string(line_no) + ": self-loop on '" + rec.src + "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Components weak_components(const SocialGraph& g) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  Components c;
  c.label.assign(g.node_count(), unset);
  std::vector<NodeId> frontier;
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (c.label[root] != unset) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    frontier.assign(1, root);
    c.label[root] = id;
    while (!frontier.empty()) {
      const NodeId u = frontier.back();
      frontier.pop_back();
      ++size;
      for (auto nbrs : {g.followees(u), g.followers(u)}) {
        for (NodeId v : nbrs) {
          if (c.label[v] == unset) {
            c.label[v] = id;
            frontier.push_back(v);
          }
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

SocialGraph induced_subgraph(const SocialGraph& g, std::span<const NodeId> keep) {
  std::vector<NodeId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  constexpr auto dropped = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.node_count(), dropped);
  IdMap ids;
  ids.reserve(sorted.size());
  for (NodeId old : sorted) {
    if (old >= g.node_count()) throw InputError("induced_subgraph: node out of range");
    if (remap[old] != dropped) throw InputError("induced_subgraph: duplicate node");
    remap[old] = ids.intern(g.ids().name(old));
  }
  std::vector<Edge> edges;
  for (NodeId old : sorted) {
    for (NodeId v : g.followees(old)) {
      if (remap[v] != dropped) edges.push_back({remap[old], remap[v]});
    }
  }
  return SocialGraph::from_indexed(std::move(ids), std::move(edges));
}

std::vector<NodeId> largest_wcc_nodes(const SocialGraph& g) {
  if (g.empty()) throw InputError("largest_wcc: empty graph");
  const auto comps = weak_components(g);
  // Components are numbered by smallest member, so the first maximum wins ties.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(comps.sizes.begin(), comps.sizes.end()) - comps.sizes.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(comps.sizes[best]);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (comps.label[u] == best) nodes.push_back(u);
  }
  return nodes;
}

SocialGraph largest_wcc(const SocialGraph& g) {
  const auto nodes = largest_wcc_nodes(g);
  return induced_subgraph(g, nodes);
}

}  // namespace hm
