#include "hatemonger/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "hatemonger/error.hpp"

namespace hm {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::followees: return "followees";
    case Direction::followers: return "followers";
    case Direction::undirected: return "undirected";
  }
  return "unknown";
}

Direction parse_direction(std::string_view name) {
  for (auto d : {Direction::followees, Direction::followers, Direction::undirected}) {
    if (name == to_string(d)) return d;
  }
  throw InputError("unknown diffusion direction '" + std::string(name) + "'");
}

std::string_view to_string(SeedMode m) {
  return m == SeedMode::fraction ? "fraction" : "binary";
}

SeedMode parse_seed_mode(std::string_view name) {
  if (name == "fraction") return SeedMode::fraction;
  if (name == "binary") return SeedMode::binary;
  throw InputError("unknown seed mode '" + std::string(name) + "'");
}

void DiffusionConfig::validate() const {
  if (max_iters < 1) throw InputError("max_iters must be >= 1");
  if (!(tol > 0.0)) throw InputError("tol must be > 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw InputError("threshold must lie in [0,1]");
}

std::vector<double> degroot_init(const Dataset& data, const AggregationConfig& aggregation,
                                 SeedMode seed) {
  std::vector<double> beliefs(data.user_count(), 0.0);
  for (NodeId u = 0; u < data.user_count(); ++u) {
    const auto posts = data.posts(u);
    if (posts.empty()) continue;
    if (seed == SeedMode::binary) {
      beliefs[u] = fixed_classify(posts, aggregation.tau_t, aggregation.tau_fixed);
    } else {
      beliefs[u] = static_cast<double>(fixed_count(posts, aggregation.tau_t)) /
                   static_cast<double>(posts.size());
    }
  }
  return beliefs;
}

DiffusionGraph::DiffusionGraph(const SocialGraph& g, Direction direction) {
  const std::size_t n = g.node_count();
  offsets_.assign(n + 1, 0);
  if (direction == Direction::undirected) {
    const UndirectedView view(g);
    for (NodeId u = 0; u < n; ++u) {
      const auto nbrs = view.neighbors(u);
      targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
      offsets_[u + 1] = targets_.size();
    }
    return;
  }
  targets_.reserve(g.edge_count());
  for (NodeId u = 0; u < n; ++u) {
    const auto nbrs = direction == Direction::followees ? g.followees(u) : g.followers(u);
    targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
    offsets_[u + 1] = targets_.size();
  }
}

std::vector<double> degroot_step(const DiffusionGraph& g, std::span<const double> beliefs,
                                 Threads threads) {
  if (beliefs.size() != g.node_count()) throw InputError("belief vector size mismatch");
  std::vector<double> next(beliefs.size());
  parallel_for(beliefs.size(), threads, [&](std::size_t i) {
    const auto u = static_cast<NodeId>(i);
    const auto nbrs = g.neighbors(u);
    double sum = beliefs[u];
    for (NodeId v : nbrs) sum += beliefs[v];
    next[u] = sum / static_cast<double>(nbrs.size() + 1);
  });
  return next;
}

std::vector<double> degroot_step(const SocialGraph& g, std::span<const double> beliefs,
                                 Direction direction, Threads threads) {
  return degroot_step(DiffusionGraph(g, direction), beliefs, threads);
}

DiffusionResult degroot_run(const SocialGraph& g, std::vector<double> beliefs,
                            const DiffusionConfig& config, Threads threads) {
  config.validate();
  const DiffusionGraph dg(g, config.direction);
  DiffusionResult result;
  result.beliefs = std::move(beliefs);
  while (result.iterations < config.max_iters) {
    auto next = degroot_step(dg, result.beliefs, threads);
    double change = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      change = std::max(change, std::abs(next[i] - result.beliefs[i]));
    }
    result.beliefs = std::move(next);
    ++result.iterations;
    result.changes.push_back(change);
    if (change < config.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<std::uint8_t> degroot_classify(std::span<const double> beliefs, double threshold) {
  std::vector<std::uint8_t> out(beliefs.size());
  std::transform(beliefs.begin(), beliefs.end(), out.begin(),
                 [threshold](double b) { return b >= threshold ? 1 : 0; });
  return out;
}

}  // namespace hm
