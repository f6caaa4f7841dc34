#include "hatemonger/graph_stats.hpp"

#include <cmath>
#include <vector>

#include "hatemonger/error.hpp"

namespace hm {

ComponentSummary component_stats(const SocialGraph& g, std::span<const std::string> isolated) {
  ComponentSummary s;
  const auto comps = weak_components(g);
  s.n_components = comps.count();
  for (std::size_t size : comps.sizes) {
    if (size == 1) ++s.n_singletons;
  }
  // Isolated ids may repeat or already be graph nodes; count each new one once.
  IdMap extra;
  for (const auto& id : isolated) {
    if (!g.ids().find(id) && !extra.find(id)) {
      extra.intern(id);
      ++s.n_components;
      ++s.n_singletons;
    }
  }
  return s;
}

double clustering_coefficient(const SocialGraph& g, Threads threads) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("clustering_coefficient: empty graph");
  const UndirectedView view(g);
  std::vector<double> local(n, 0.0);
  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> mark(n, 0);
    for (std::size_t u = begin; u < end; ++u) {
      const auto nbrs = view.neighbors(static_cast<NodeId>(u));
      const std::size_t d = nbrs.size();
      if (d < 2) continue;
      for (NodeId v : nbrs) mark[v] = 1;
      std::size_t twice_links = 0;
      for (NodeId v : nbrs) {
        for (NodeId w : view.neighbors(v)) twice_links += mark[w];
      }
      for (NodeId v : nbrs) mark[v] = 0;
      local[u] = static_cast<double>(twice_links) / static_cast<double>(d * (d - 1));
    }
  });
  double sum = 0.0;
  for (double c : local) sum += c;
  return sum / static_cast<double>(n);
}

double powerlaw_gamma(std::span<const std::size_t> degrees, PowerLawOptions options) {
  if (options.k_min < 1) throw InputError("powerlaw_gamma: k_min must be >= 1");
  const double x_min = options.continuity_correction ? static_cast<double>(options.k_min) - 0.5
                                                     : static_cast<double>(options.k_min);
  std::size_t n = 0;
  double log_sum = 0.0;
  for (std::size_t k : degrees) {
    if (k < options.k_min) continue;
    ++n;
    log_sum += std::log(static_cast<double>(k) / x_min);
  }
  if (n == 0) {
    throw DegenerateDataError("powerlaw_gamma: no degree >= k_min=" +
                              std::to_string(options.k_min));
  }
  if (!(log_sum > 0.0)) {
    throw DegenerateDataError(
        "powerlaw_gamma: all qualifying degrees equal k_min, estimator diverges");
  }
  return 1.0 + static_cast<double>(n) / log_sum;
}

double powerlaw_gamma(const SocialGraph& g, PowerLawOptions options) {
  const UndirectedView view(g);
  std::vector<std::size_t> degrees(view.node_count());
  for (NodeId u = 0; u < view.node_count(); ++u) degrees[u] = view.degree(u);
  return powerlaw_gamma(degrees, options);
}

GraphStats compute_stats(const SocialGraph& g, std::span<const std::string> isolated,
                         PowerLawOptions gamma_options, Threads threads) {
  if (g.empty() && isolated.empty()) throw InputError("graph statistics: empty graph");
  GraphStats s;
  const auto summary = component_stats(g, isolated);
  s.n_components = summary.n_components;
  s.n_singletons = summary.n_singletons;
  s.node_count = g.node_count() + (summary.n_singletons - component_stats(g).n_singletons);
  s.edge_count = g.edge_count();
  if (g.empty()) {
    // Only isolated users: the largest component is a single node.
    s.largest_wcc_nodes = 1;
    s.powerlaw_gamma = std::nan("");
    return s;
  }
  const SocialGraph core = largest_wcc(g);
  s.largest_wcc_nodes = core.node_count();
  s.largest_wcc_edges = core.edge_count();
  s.clustering_coefficient = clustering_coefficient(core, threads);
  try {
    s.powerlaw_gamma = powerlaw_gamma(core, gamma_options);
  } catch (const DegenerateDataError&) {
    s.powerlaw_gamma = std::nan("");
  }
  return s;
}

}  // namespace hm
