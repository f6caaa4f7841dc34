#include "hatemonger/logreg.hpp"

#include <algorithm>
#include <cmath>

#include "hatemonger/error.hpp"
#include "hatemonger/metrics.hpp"

namespace hm {

Standardizer Standardizer::fit(MatrixView x) {
  Standardizer s;
  s.mean.assign(x.cols, 0.0);
  s.scale.assign(x.cols, 1.0);
  s.constant.assign(x.cols, true);
  if (x.rows == 0) return s;
  const auto n = static_cast<double>(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t j = 0; j < x.cols; ++j) s.mean[j] += row[j];
  }
  for (auto& m : s.mean) m /= n;
  std::vector<double> var(x.cols, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t j = 0; j < x.cols; ++j) {
      const double d = row[j] - s.mean[j];
      var[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < x.cols; ++j) {
    const double sd = std::sqrt(var[j] / n);
    if (sd > 1e-12 * std::max(1.0, std::abs(s.mean[j]))) {
      s.scale[j] = sd;
      s.constant[j] = false;
    }
  }
  return s;
}

void Standardizer::apply(std::span<const double> in, std::span<double> out) const {
  for (std::size_t j = 0; j < in.size(); ++j) {
    out[j] = constant[j] ? 0.0 : (in[j] - mean[j]) / scale[j];
  }
}

std::vector<double> Standardizer::transform(MatrixView x) const {
  std::vector<double> out(x.rows * x.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    apply(x.row(r), std::span<double>(out).subspan(r * x.cols, x.cols));
  }
  return out;
}

void TrainConfig::validate() const {
  if (!(l2 >= 0.0)) throw InputError("l2 must be >= 0");
  if (max_iters < 1) throw InputError("max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw InputError("grad_tol must be > 0");
  if (!(decision_threshold >= 0.0 && decision_threshold <= 1.0)) {
    throw InputError("decision threshold must lie in [0,1]");
  }
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LogisticLoss::LogisticLoss(MatrixView x, std::span<const int> y, double l2)
    : x_(x), y_(y), l2_(l2) {
  if (y.size() != x.rows) throw InputError("label count does not match feature rows");
  if (x.rows == 0) throw DegenerateDataError("empty training set");
}

double LogisticLoss::value(std::span<const double> params) const {
  const auto w = params.first(x_.cols);
  const double b = params[x_.cols];
  double nll = 0.0;
  for (std::size_t i = 0; i < x_.rows; ++i) {
    const double z = dot(w, x_.row(i)) + b;
    nll += softplus(z) - y_[i] * z;
  }
  return (nll + 0.5 * l2_ * dot(w, w)) / static_cast<double>(x_.rows);
}

double LogisticLoss::value_and_gradient(std::span<const double> params,
                                        std::span<double> grad) const {
  const auto w = params.first(x_.cols);
  const double b = params[x_.cols];
  std::fill(grad.begin(), grad.end(), 0.0);
  double nll = 0.0;
  for (std::size_t i = 0; i < x_.rows; ++i) {
    const auto row = x_.row(i);
    const double z = dot(w, row) + b;
    nll += softplus(z) - y_[i] * z;
    const double residual = sigmoid(z) - y_[i];
    for (std::size_t j = 0; j < x_.cols; ++j) grad[j] += residual * row[j];
    grad[x_.cols] += residual;
  }
  const double inv_n = 1.0 / static_cast<double>(x_.rows);
  for (std::size_t j = 0; j < x_.cols; ++j) grad[j] = (grad[j] + l2_ * w[j]) * inv_n;
  grad[x_.cols] *= inv_n;
  return (nll + 0.5 * l2_ * dot(w, w)) / static_cast<double>(x_.rows);
}

double LogRegModel::predict_proba(std::span<const double> x) const {
  if (x.size() != weights.size()) throw InputError("feature vector length does not match model");
  double z = bias;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (standardization.constant[j]) continue;
    z += weights[j] * (x[j] - standardization.mean[j]) / standardization.scale[j];
  }
  return sigmoid(z);
}

TrainResult train_logreg_traced(MatrixView x, std::span<const int> y, const TrainConfig& config) {
  config.validate();
  if (y.size() != x.rows) throw InputError("label count does not match feature rows");
  const auto positives = std::count(y.begin(), y.end(), 1);
  if (positives == 0 || static_cast<std::size_t>(positives) == y.size()) {
    throw DegenerateDataError("training labels contain a single class");
  }
  for (double v : x.data) {
    if (!std::isfinite(v)) throw InputError("non-finite feature value");
  }

  TrainResult result;
  auto& model = result.model;
  model.standardization = Standardizer::fit(x);
  const auto z = model.standardization.transform(x);
  const MatrixView zx{z, x.rows, x.cols};
  const LogisticLoss loss(zx, y, config.l2);

  std::vector<double> params(loss.dim(), 0.0), grad(loss.dim()), trial(loss.dim());
  double f = loss.value_and_gradient(params, grad);
  result.loss_history.push_back(f);
  double step = 1.0;
  auto max_norm = [](std::span<const double> g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  while (true) {
    result.gradient_max_norm = max_norm(grad);
    if (result.gradient_max_norm < config.grad_tol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= config.max_iters) break;
    const double gg = dot(grad, grad);
    bool accepted = false;
    double f_trial = f;
    while (step > 1e-20) {
      for (std::size_t i = 0; i < params.size(); ++i) trial[i] = params[i] - step * grad[i];
      f_trial = loss.value(trial);
      if (f_trial <= f - 1e-4 * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled at machine precision
    params.swap(trial);
    f = loss.value_and_gradient(params, grad);
    result.loss_history.push_back(f);
    ++result.iterations;
    step = std::min(step * 2.0, 1e6);
  }

  model.weights.assign(params.begin(), params.end() - 1);
  model.bias = params.back();
  model.decision_threshold = config.decision_threshold;
  if (config.tune_threshold) {
    std::vector<double> probs(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) probs[r] = model.predict_proba(x.row(r));
    model.decision_threshold = best_f1_threshold(y, probs);
  }
  return result;
}

LogRegModel train_logreg(MatrixView x, std::span<const int> y, const TrainConfig& config) {
  return train_logreg_traced(x, y, config).model;
}

}  // namespace hm
