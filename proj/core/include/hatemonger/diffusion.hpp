#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hatemonger/aggregate.hpp"
#include "hatemonger/dataset.hpp"
#include "hatemonger/parallel.hpp"

namespace hm {

/// Which neighbors a user listens to during averaging.
enum class Direction { followees, followers, undirected };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view name);

enum class SeedMode {
  /// Fraction of the user's posts scored >= tau_t.
  fraction,
  /// The naive classification C_F (0 or 1).
  binary,
};

std::string_view to_string(SeedMode m);
SeedMode parse_seed_mode(std::string_view name);

struct DiffusionConfig {
  Direction direction = Direction::followees;
  SeedMode seed = SeedMode::fraction;
  std::size_t max_iters = 100;
  double tol = 1e-6;
  /// A user is classified hateful when its final belief >= threshold.
  double threshold = 0.5;

  void validate() const;
};

/// Initial beliefs from post scores. Users without posts start at 0.
std::vector<double> degroot_init(const Dataset& data, const AggregationConfig& aggregation,
                                 SeedMode seed);

/// Neighbor lists for one direction. Built once and reused across steps.
class DiffusionGraph {
 public:
  DiffusionGraph(const SocialGraph& g, Direction direction);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
};

/// One synchronous update b'(u) = (b(u) + sum_{v in N(u)} b(v)) / (1 + |N(u)|).
std::vector<double> degroot_step(const DiffusionGraph& g, std::span<const double> beliefs,
                                 Threads threads = {});
std::vector<double> degroot_step(const SocialGraph& g, std::span<const double> beliefs,
                                 Direction direction, Threads threads = {});

struct DiffusionResult {
  std::vector<double> beliefs;
  std::size_t iterations = 0;
  /// Max-norm change of each performed step.
  std::vector<double> changes;
  bool converged = false;
};

/// Iterates until the max-norm change drops below tol or max_iters steps.
DiffusionResult degroot_run(const SocialGraph& g, std::vector<double> beliefs,
                            const DiffusionConfig& config, Threads threads = {});

/// 1 iff belief >= threshold.
std::vector<std::uint8_t> degroot_classify(std::span<const double> beliefs, double threshold);

}  // namespace hm
