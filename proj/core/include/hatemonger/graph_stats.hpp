#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "hatemonger/graph.hpp"
#include "hatemonger/parallel.hpp"

namespace hm {

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t n_components = 0;
  std::size_t n_singletons = 0;
  std::size_t largest_wcc_nodes = 0;
  std::size_t largest_wcc_edges = 0;
  double clustering_coefficient = 0.0;
  /// NaN when the degree sample cannot support an estimate.
  double powerlaw_gamma = 0.0;
};

/// Weak-component count and singleton count. Ids in `isolated` that are not
/// graph nodes count as extra singleton components.
struct ComponentSummary {
  std::size_t n_components = 0;
  std::size_t n_singletons = 0;
};
ComponentSummary component_stats(const SocialGraph& g, std::span<const std::string> isolated = {});

/// Average local clustering coefficient of the undirected simple view.
/// Nodes of degree below two contribute zero.
double clustering_coefficient(const SocialGraph& g, Threads threads = {});

struct PowerLawOptions {
  std::size_t k_min = 1;
  /// Use k_min - 1/2 as the lower cutoff of the continuous approximation.
  bool continuity_correction = true;
};

/// Continuous maximum-likelihood power-law exponent over the degrees >= k_min:
///   gamma = 1 + n / sum ln(k_i / x_min),  x_min = k_min - 1/2 (or k_min).
/// Throws DegenerateDataError when no degree qualifies or the sum vanishes.
double powerlaw_gamma(std::span<const std::size_t> degrees, PowerLawOptions options = {});

/// Same estimator over the undirected degrees of `g`.
double powerlaw_gamma(const SocialGraph& g, PowerLawOptions options = {});

/// Full statistics. Component fields describe the whole graph; clustering
/// and gamma are computed on the largest weak component.
GraphStats compute_stats(const SocialGraph& g, std::span<const std::string> isolated,
                         PowerLawOptions gamma_options, Threads threads = {});

}  // namespace hm
