#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hatemonger/aggregate.hpp"
#include "hatemonger/dataset.hpp"
#include "hatemonger/diffusion.hpp"
#include "hatemonger/logreg.hpp"
#include "hatemonger/metrics.hpp"
#include "hatemonger/report.hpp"

namespace hm {

/// Classification pipelines that can be cross-validated. `fixed` is the
/// untrained naive classifier (hateful-post count >= tau_fixed); the feature
/// modes train logistic regression on build_features output; `degroot`
/// diffuses post-derived beliefs and thresholds them.
enum class EvalMode { fixed, relational, bins, quantiles, bins_quantiles, multimodal, degroot };

std::string_view to_string(EvalMode mode);
EvalMode parse_eval_mode(std::string_view name);
/// Feature layout used by a mode; nullopt for degroot.
std::optional<FeatureMode> feature_mode(EvalMode mode);

struct EvalConfig {
  AggregationConfig aggregation;
  TrainConfig train;
  DiffusionConfig diffusion;
  /// Pick the diffusion threshold by training-fold F1 instead of using
  /// diffusion.threshold.
  bool tune_diffusion_threshold = true;
  std::size_t folds = 5;
  std::uint64_t seed = 42;

  Json to_json(EvalMode mode) const;
};

struct FoldResult {
  BinaryMetrics metrics;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  /// Decision threshold applied on this fold.
  double threshold = 0.0;
};

struct EvalReport {
  Json config;
  std::vector<FoldResult> folds;
  BinaryMetrics mean;
  /// Population standard deviation across folds.
  BinaryMetrics std;

  Json to_json() const;
};

/// Stratified k-fold evaluation over the labeled users. Features (or
/// beliefs) are computed once for all users from scores alone; each fold
/// fits standardization and model on its training users only.
EvalReport cross_validate(const Dataset& data, EvalMode mode, const EvalConfig& config,
                          Threads threads = {});

struct SweepRow {
  std::size_t threshold = 0;
  std::size_t predicted_positive = 0;
  BinaryMetrics metrics;
};

/// Naive classifier at each count threshold over the labeled users; the
/// hateful-post count is the ranking score, so AUC is the same on every row.
/// Thresholds must be strictly ascending and >= 1.
std::vector<SweepRow> threshold_sweep(const Dataset& data, std::span<const std::size_t> thresholds,
                                      double tau_t);

/// `threshold,precision,recall,f1,roc_auc`
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace hm
