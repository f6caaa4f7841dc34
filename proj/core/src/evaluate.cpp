#include "hatemonger/evaluate.hpp"

#include <cmath>
#include <ostream>

#include "hatemonger/error.hpp"

namespace hm {

std::string_view to_string(EvalMode mode) {
  if (mode == EvalMode::degroot) return "degroot";
  return to_string(*feature_mode(mode));
}

EvalMode parse_eval_mode(std::string_view name) {
  if (name == "degroot") return EvalMode::degroot;
  switch (parse_feature_mode(name)) {
    case FeatureMode::fixed: return EvalMode::fixed;
    case FeatureMode::relational: return EvalMode::relational;
    case FeatureMode::bins: return EvalMode::bins;
    case FeatureMode::quantiles: return EvalMode::quantiles;
    case FeatureMode::bins_quantiles: return EvalMode::bins_quantiles;
    case FeatureMode::multimodal: return EvalMode::multimodal;
  }
  throw InputError("unknown mode '" + std::string(name) + "'");
}

std::optional<FeatureMode> feature_mode(EvalMode mode) {
  switch (mode) {
    case EvalMode::fixed: return FeatureMode::fixed;
    case EvalMode::relational: return FeatureMode::relational;
    case EvalMode::bins: return FeatureMode::bins;
    case EvalMode::quantiles: return FeatureMode::quantiles;
    case EvalMode::bins_quantiles: return FeatureMode::bins_quantiles;
    case EvalMode::multimodal: return FeatureMode::multimodal;
    case EvalMode::degroot: return std::nullopt;
  }
  return std::nullopt;
}

Json EvalConfig::to_json(EvalMode mode) const {
  auto j = Json::object();
  j.set("mode", std::string(to_string(mode)));
  j.set("k", aggregation.k_bins);
  j.set("tau_t", aggregation.tau_t);
  j.set("tau_fixed", aggregation.tau_fixed);
  j.set("softmax_histograms", aggregation.softmax_histograms);
  j.set("folds", folds);
  j.set("seed", seed);
  j.set("l2", train.l2);
  j.set("max_iters", train.max_iters);
  j.set("grad_tol", train.grad_tol);
  j.set("decision_threshold", train.decision_threshold);
  j.set("tune_threshold", train.tune_threshold);
  if (mode == EvalMode::degroot) {
    j.set("direction", std::string(to_string(diffusion.direction)));
    j.set("seed_mode", std::string(to_string(diffusion.seed)));
    j.set("diffusion_max_iters", diffusion.max_iters);
    j.set("diffusion_tol", diffusion.tol);
    j.set("diffusion_threshold", diffusion.threshold);
    j.set("tune_diffusion_threshold", tune_diffusion_threshold);
  }
  return j;
}

namespace {

Json metrics_json(const BinaryMetrics& m) {
  auto j = Json::object();
  j.set("precision", m.precision);
  j.set("recall", m.recall);
  j.set("f1", m.f1);
  j.set("roc_auc", m.roc_auc);
  return j;
}

template <typename Get>
std::pair<double, double> mean_std(const std::vector<FoldResult>& folds, Get get) {
  double mean = 0.0;
  for (const auto& f : folds) mean += get(f.metrics);
  mean /= static_cast<double>(folds.size());
  double var = 0.0;
  for (const auto& f : folds) {
    const double d = get(f.metrics) - mean;
    var += d * d;
  }
  return {mean, std::sqrt(var / static_cast<double>(folds.size()))};
}

}  // namespace

Json EvalReport::to_json() const {
  auto j = Json::object();
  j.set("config", config);
  auto fold_array = Json::array();
  for (const auto& f : folds) {
    auto fj = metrics_json(f.metrics);
    fj.set("train_size", f.train_size);
    fj.set("test_size", f.test_size);
    fj.set("threshold", f.threshold);
    fold_array.push(std::move(fj));
  }
  j.set("folds", std::move(fold_array));
  j.set("mean", metrics_json(mean));
  j.set("std", metrics_json(std));
  return j;
}

EvalReport cross_validate(const Dataset& data, EvalMode mode, const EvalConfig& config,
                          Threads threads) {
  config.aggregation.validate();
  config.train.validate();
  config.diffusion.validate();
  const auto labeled = data.labeled_nodes();
  if (labeled.size() < 2 * config.folds) {
    throw DegenerateDataError("cross-validation needs at least " +
                              std::to_string(2 * config.folds) + " labeled users, got " +
                              std::to_string(labeled.size()));
  }
  std::vector<int> y(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) y[i] = *data.label(labeled[i]);
  const auto folds = stratified_kfold(y, config.folds, config.seed);

  // Per labeled user: a feature row (trained modes) or a single score.
  std::size_t cols = 0;
  std::vector<double> x;
  std::vector<double> score;
  if (mode == EvalMode::fixed) {
    score.resize(labeled.size());
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      score[i] = static_cast<double>(fixed_count(data.posts(labeled[i]), config.aggregation.tau_t));
    }
  } else if (mode == EvalMode::degroot) {
    auto init = degroot_init(data, config.aggregation, config.diffusion.seed);
    const auto run = degroot_run(data.graph(), std::move(init), config.diffusion, threads);
    score.resize(labeled.size());
    for (std::size_t i = 0; i < labeled.size(); ++i) score[i] = run.beliefs[labeled[i]];
  } else {
    const auto fm = build_features(data, *feature_mode(mode), config.aggregation, threads);
    cols = fm.cols();
    x.resize(labeled.size() * cols);
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      const auto row = fm.row(labeled[i]);
      std::copy(row.begin(), row.end(), x.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
  }

  EvalReport report;
  report.config = config.to_json(mode);
  report.folds.resize(folds.size());
  parallel_for(folds.size(), threads, [&](std::size_t f) {
    const auto& test = folds[f];
    std::vector<bool> in_test(labeled.size(), false);
    for (std::size_t i : test) in_test[i] = true;
    std::vector<std::size_t> train;
    train.reserve(labeled.size() - test.size());
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      if (!in_test[i]) train.push_back(i);
    }

    std::vector<int> y_test(test.size()), y_pred(test.size());
    std::vector<double> s_test(test.size());
    for (std::size_t t = 0; t < test.size(); ++t) y_test[t] = y[test[t]];
    FoldResult& out = report.folds[f];
    out.train_size = train.size();
    out.test_size = test.size();

    if (mode == EvalMode::fixed) {
      out.threshold = static_cast<double>(config.aggregation.tau_fixed);
      for (std::size_t t = 0; t < test.size(); ++t) {
        s_test[t] = score[test[t]];
        y_pred[t] = s_test[t] >= out.threshold ? 1 : 0;
      }
    } else if (mode == EvalMode::degroot) {
      if (config.tune_diffusion_threshold) {
        std::vector<int> y_train(train.size());
        std::vector<double> s_train(train.size());
        for (std::size_t t = 0; t < train.size(); ++t) {
          y_train[t] = y[train[t]];
          s_train[t] = score[train[t]];
        }
        out.threshold = best_f1_threshold(y_train, s_train);
      } else {
        out.threshold = config.diffusion.threshold;
      }
      for (std::size_t t = 0; t < test.size(); ++t) {
        s_test[t] = score[test[t]];
        y_pred[t] = s_test[t] >= out.threshold ? 1 : 0;
      }
    } else {
      std::vector<double> x_train(train.size() * cols);
      std::vector<int> y_train(train.size());
      for (std::size_t t = 0; t < train.size(); ++t) {
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(train[t] * cols), cols,
                    x_train.begin() + static_cast<std::ptrdiff_t>(t * cols));
        y_train[t] = y[train[t]];
      }
      const auto model = train_logreg({x_train, train.size(), cols}, y_train, config.train);
      out.threshold = model.decision_threshold;
      for (std::size_t t = 0; t < test.size(); ++t) {
        const std::span<const double> row(x.data() + test[t] * cols, cols);
        s_test[t] = model.predict_proba(row);
        y_pred[t] = s_test[t] >= model.decision_threshold ? 1 : 0;
      }
    }
    out.metrics = compute_metrics(y_test, y_pred, s_test);
  });

  const auto [p_mean, p_std] = mean_std(report.folds, [](auto& m) { return m.precision; });
  const auto [r_mean, r_std] = mean_std(report.folds, [](auto& m) { return m.recall; });
  const auto [f_mean, f_std] = mean_std(report.folds, [](auto& m) { return m.f1; });
  const auto [a_mean, a_std] = mean_std(report.folds, [](auto& m) { return m.roc_auc; });
  report.mean = {p_mean, r_mean, f_mean, a_mean};
  report.std = {p_std, r_std, f_std, a_std};
  return report;
}

std::vector<SweepRow> threshold_sweep(const Dataset& data, std::span<const std::size_t> thresholds,
                                      double tau_t) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 1) throw InputError("sweep thresholds must be >= 1");
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw InputError("sweep thresholds must be strictly ascending");
    }
  }
  const auto labeled = data.labeled_nodes();
  std::vector<int> y(labeled.size());
  std::vector<double> counts(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    y[i] = *data.label(labeled[i]);
    counts[i] = static_cast<double>(fixed_count(data.posts(labeled[i]), tau_t));
  }
  const double auc = roc_auc(y, counts);
  std::vector<SweepRow> rows;
  std::vector<int> pred(labeled.size());
  for (std::size_t t : thresholds) {
    SweepRow row;
    row.threshold = t;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      pred[i] = counts[i] >= static_cast<double>(t) ? 1 : 0;
      row.predicted_positive += static_cast<std::size_t>(pred[i]);
    }
    const auto c = confusion(y, pred);
    row.metrics = {precision(c), recall(c), f1_score(c), auc};
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "threshold,precision,recall,f1,roc_auc\n";
  for (const auto& r : rows) {
    out << r.threshold << ',' << format_number(r.metrics.precision) << ','
        << format_number(r.metrics.recall) << ',' << format_number(r.metrics.f1) << ','
        << format_number(r.metrics.roc_auc) << '\n';
  }
}

}  // namespace hm
