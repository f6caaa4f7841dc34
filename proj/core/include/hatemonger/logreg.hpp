#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hm {

/// Non-owning row-major matrix.
struct MatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t r) const { return data.subspan(r * cols, cols); }
};

/// Per-feature z-scoring fitted on training rows. Features with zero
/// variance keep scale 1 and are flagged constant.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<bool> constant;

  static Standardizer fit(MatrixView x);
  void apply(std::span<const double> in, std::span<double> out) const;
  std::vector<double> transform(MatrixView x) const;
};

struct TrainConfig {
  /// L2 penalty on weights (bias excluded).
  double l2 = 1.0;
  std::size_t max_iters = 10000;
  /// Stop once the gradient max-norm falls below this.
  double grad_tol = 1e-7;
  double decision_threshold = 0.5;
  /// Replace decision_threshold by the value maximizing training F1.
  bool tune_threshold = false;

  void validate() const;
};

/// Regularized mean negative log-likelihood over parameters [w..., b]:
///   L = (1/n) * ( sum_i [log(1 + e^{z_i}) - y_i z_i] + (l2/2) * |w|^2 ),
///   z_i = w . x_i + b.
class LogisticLoss {
 public:
  LogisticLoss(MatrixView x, std::span<const int> y, double l2);

  std::size_t dim() const { return x_.cols + 1; }
  double value(std::span<const double> params) const;
  /// Writes the gradient into `grad` and returns the loss.
  double value_and_gradient(std::span<const double> params, std::span<double> grad) const;

 private:
  MatrixView x_;
  std::span<const int> y_;
  double l2_;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  Standardizer standardization;
  double decision_threshold = 0.5;

  /// sigmoid(w . standardize(x) + b); x is a raw (unstandardized) row.
  double predict_proba(std::span<const double> x) const;
  int predict(std::span<const double> x) const {
    return predict_proba(x) >= decision_threshold ? 1 : 0;
  }
};

struct TrainResult {
  LogRegModel model;
  std::size_t iterations = 0;
  double gradient_max_norm = 0.0;
  bool converged = false;
  /// Loss after each accepted step, starting with the initial loss.
  std::vector<double> loss_history;
};

double sigmoid(double z);

/// Full-batch gradient descent with backtracking line search from zero
/// weights. Throws DegenerateDataError unless both classes are present.
TrainResult train_logreg_traced(MatrixView x, std::span<const int> y, const TrainConfig& config);
LogRegModel train_logreg(MatrixView x, std::span<const int> y, const TrainConfig& config);

}  // namespace hm
