#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatemonger/dataset.hpp"
#include "hatemonger/parallel.hpp"

namespace hm {

struct AggregationConfig {
  /// Post-level threshold: a post is hateful when its score >= tau_t.
  double tau_t = 0.5;
  /// Hateful-post count at which the naive classifier flags a user.
  std::size_t tau_fixed = 3;
  /// Histogram resolution.
  std::size_t k_bins = 10;
  /// Apply softmax to each histogram block (off gives raw counts).
  bool softmax_histograms = true;

  /// Throws InputError when a field is out of range.
  void validate() const;
};

enum class FeatureMode { fixed, relational, bins, quantiles, bins_quantiles, multimodal };

std::string_view to_string(FeatureMode mode);
/// Accepts `fixed`, `relational`, `bins`, `quantiles`, `bins+quantiles`,
/// `multimodal`.
FeatureMode parse_feature_mode(std::string_view name);

/// Number of posts with score >= tau_t.
std::size_t fixed_count(std::span<const double> scores, double tau_t);

/// Naive user classification: 1 iff fixed_count >= tau_fixed.
int fixed_classify(std::span<const double> scores, double tau_t, std::size_t tau_fixed);

/// Naive classification of every node, from scores only.
std::vector<std::uint8_t> naive_labels(const Dataset& data, const AggregationConfig& config,
                                       Threads threads = {});

/// [own C_F, mean C_F over followers, mean C_F over followees]; empty
/// neighbor sets give 0.
std::array<double, 3> relational_features(const Dataset& data, NodeId user,
                                          const AggregationConfig& config);

/// Same, reusing precomputed naive labels for all nodes.
std::array<double, 3> relational_features(const SocialGraph& graph,
                                          std::span<const std::uint8_t> naive, NodeId user);

/// Counts over k equal-width bins of [0,1]. Bin i holds scores s with
/// i <= s*k < i+1; a score of exactly 1 goes to the last bin.
std::vector<double> bin_histogram(std::span<const double> scores, std::size_t k);

/// Counts over k equal-width bins spanning [min, max] of the user's own
/// scores, with the same half-open convention. When min == max every post
/// lands in bin 0. Throws DegenerateDataError on an empty score list.
std::vector<double> quantile_histogram(std::span<const double> scores, std::size_t k);

/// Numerically stable softmax (max-subtracted), in place.
void softmax_inplace(std::span<double> v);
std::vector<double> softmax(std::span<const double> v);

/// Row-major per-user features with a named schema. Rows follow node index.
struct FeatureMatrix {
  FeatureMode mode = FeatureMode::fixed;
  std::vector<std::string> schema;
  std::vector<NodeId> nodes;
  std::vector<double> values;

  std::size_t rows() const { return nodes.size(); }
  std::size_t cols() const { return schema.size(); }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols(), cols()};
  }
  std::span<double> row(std::size_t r) { return {values.data() + r * cols(), cols()}; }
};

/// Feature names for a mode: fixed -> [hateful_posts]; relational ->
/// [cf_self, cf_followers, cf_followees]; bins -> bin_0..; quantiles ->
/// qbin_0..; combined modes concatenate relational, bins, quantiles.
std::vector<std::string> feature_schema(FeatureMode mode, std::size_t k_bins);

/// Computes features for every node of the dataset. Users without posts get
/// all-zero post-derived blocks (own count, histograms). Output is identical
/// for any thread count.
FeatureMatrix build_features(const Dataset& data, FeatureMode mode,
                             const AggregationConfig& config, Threads threads = {});

/// CSV with header `user_id,<schema>` and one row per user.
void write_features_csv(std::ostream& out, const FeatureMatrix& features, const IdMap& ids);

}  // namespace hm
