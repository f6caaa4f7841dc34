#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hm {

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct BinaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
};

Confusion confusion(std::span<const int> y_true, std::span<const int> y_pred);

/// TP/(TP+FP), or 0 with no predicted positives.
double precision(const Confusion& c);
/// TP/(TP+FN), or 0 with no actual positives.
double recall(const Confusion& c);
/// Harmonic mean of precision and recall, 0 when both are 0.
double f1_score(const Confusion& c);

/// P(score_pos > score_neg) + 0.5 P(tie) over all positive/negative pairs,
/// computed from midranks in O(n log n). Throws DegenerateDataError when a
/// class is missing.
double roc_auc(std::span<const int> y_true, std::span<const double> scores);

/// Throws DegenerateDataError when y_true holds no positive example.
BinaryMetrics compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                              std::span<const double> scores);

/// Threshold t among the distinct scores maximizing F1 of the rule
/// score >= t. Ties keep the highest threshold.
double best_f1_threshold(std::span<const int> y_true, std::span<const double> scores);

/// Stratified k-fold split: returns k test folds of indices into `labels`,
/// each sorted ascending. Within each class the indices are shuffled with
/// Rng(seed) and dealt round-robin, continuing the fold cursor from the
/// previous class so fold sizes stay balanced.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed);

}  // namespace hm
