#include "hatemonger/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "hatemonger/error.hpp"
#include "hatemonger/random.hpp"

namespace hm {

Confusion confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw InputError("label and prediction lengths differ");
  Confusion c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] == 1;
    const bool p = y_pred[i] == 1;
    if (t && p) ++c.tp;
    else if (!t && p) ++c.fp;
    else if (t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double precision(const Confusion& c) {
  return c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double recall(const Confusion& c) {
  return c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double f1_score(const Confusion& c) {
  const double p = precision(c);
  const double r = recall(c);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double roc_auc(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw InputError("label and score lengths differ");
  const std::size_t n = y_true.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Twice the midrank sum of positives stays integral, so the U statistic
  // below is exact and the result matches pairwise counting bit for bit.
  std::uint64_t twice_rank_sum = 0;
  std::uint64_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1..j share the midrank (i+1+j)/2.
    const std::uint64_t twice_midrank = i + 1 + j;
    for (std::size_t t = i; t < j; ++t) {
      if (y_true[order[t]] == 1) {
        twice_rank_sum += twice_midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::uint64_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DegenerateDataError("ROC AUC needs both classes");
  const std::uint64_t twice_u = twice_rank_sum - n_pos * (n_pos + 1);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos * n_neg));
}

BinaryMetrics compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                              std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw InputError("label and score lengths differ");
  const auto c = confusion(y_true, y_pred);
  if (c.tp + c.fn == 0) throw DegenerateDataError("evaluation set has no positive example");
  BinaryMetrics m;
  m.precision = precision(c);
  m.recall = recall(c);
  m.f1 = f1_score(c);
  m.roc_auc = roc_auc(y_true, scores);
  return m;
}

double best_f1_threshold(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw InputError("label and score lengths differ");
  if (scores.empty()) throw DegenerateDataError("threshold search on an empty set");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const auto total_pos = static_cast<std::size_t>(std::count(y_true.begin(), y_true.end(), 1));
  Confusion c;
  c.fn = total_pos;
  c.tn = scores.size() - total_pos;
  double best_f1 = -1.0;
  double best_threshold = scores[order.front()];
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    const double t = scores[order[i]];
    for (; j < order.size() && scores[order[j]] == t; ++j) {
      if (y_true[order[j]] == 1) {
        ++c.tp;
        --c.fn;
      } else {
        ++c.fp;
        --c.tn;
      }
    }
    const double f = f1_score(c);
    if (f > best_f1) {
      best_f1 = f;
      best_threshold = t;
    }
    i = j;
  }
  return best_threshold;
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw InputError("k-fold needs k >= 2");
  if (k > labels.size()) throw InputError("k-fold: k exceeds the number of examples");
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw InputError("k-fold labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
  }
  if (by_class[0].empty() || by_class[1].empty()) {
    throw DegenerateDataError("k-fold: both classes need at least one member");
  }
  Rng rng(seed, /*stream=*/0x6b666f6c64);  // "kfold"
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t cursor = 0;
  for (int cls : {1, 0}) {
    auto& members = by_class[cls];
    shuffle(std::span<std::size_t>(members), rng);
    for (std::size_t idx : members) {
      folds[cursor].push_back(idx);
      cursor = (cursor + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

}  // namespace hm
