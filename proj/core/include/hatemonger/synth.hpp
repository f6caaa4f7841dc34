#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hatemonger/dataset.hpp"
#include "hatemonger/report.hpp"

namespace hm {

struct BetaParams {
  double a = 1.0;
  double b = 1.0;
};

/// Two-block directed stochastic block model with planted hate-mongers.
struct SynthConfig {
  std::size_t n_users = 1000;
  /// Share of users planted in the hateful block, in (0,1).
  double hate_fraction = 0.25;
  /// Directed edge probability inside a block and across blocks.
  double p_in = 0.05;
  double p_out = 0.005;
  std::size_t posts_min = 30;
  std::size_t posts_max = 60;
  BetaParams hate_scores{8.0, 2.0};
  BetaParams normal_scores{2.0, 8.0};
  /// Probability that a hateful user's post is drawn from the normal
  /// distribution (coded language).
  double ambiguity = 0.5;
  /// Users that receive a label; 0 labels everyone.
  std::size_t labeled_users = 0;
  std::uint64_t seed = 1;

  /// Throws InputError for an invalid or degenerate configuration.
  void validate() const;
  Json to_json() const;
};

struct SynthDataset {
  Dataset dataset;
  /// Planted class of every node (1 = hateful block).
  std::vector<std::int8_t> planted;
};

/// Deterministic in the config. Users are named `u<index>`; membership,
/// edges, post counts/scores and the labeled subset use separate Rng streams
/// (1, 2, 3, 4). Edges are sampled by geometric skipping over the ordered
/// pairs of each block pair, so cost is proportional to the edge count.
SynthDataset generate(const SynthConfig& config);

/// Writes edges.csv, scores.csv, labels.csv, ground_truth.csv and
/// config.json into `dir` (created if missing).
void write_synth_files(const std::filesystem::path& dir, const SynthDataset& synth,
                       const SynthConfig& config);

}  // namespace hm
