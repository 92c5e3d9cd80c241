// SPDX-License-Identifier: Apache-2.0

// Logistic regression (deterministic full-batch gradient descent) and the
// Pegasos-style stochastic subgradient linear SVM.

#include <algorithm>
#include <cmath>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

// log(1 + e^s) without overflow
double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

}  // namespace

double LinearModel::margin(const features::SparseVector& x) const {
  check_dim(x);
  double s = bias;
  for (const auto& [idx, w] : x.entries) s += w * weights[idx];
  return s;
}

double LogisticRegressionModel::score(const features::SparseVector& x) const {
  return sigmoid(margin(x));
}

double LinearSvmModel::score(const features::SparseVector& x) const { return margin(x); }

LrGradient lr_loss_gradient(const TrainingSet& ts, std::span<const double> w, double b,
                            const LogisticRegressionConfig& cfg) {
  const double n = static_cast<double>(ts.size());
  LrGradient g;
  g.grad_w.assign(w.size(), 0.0);

  for (std::size_t i = 0; i < ts.size(); ++i) {
    double s = b;
    for (const auto& [idx, val] : ts.x[i].entries) s += val * w[idx];
    const double y = static_cast<double>(ts.y[i]);
    g.loss += softplus(s) - y * s;  // cross-entropy of sigmoid(s)
    const double delta = sigmoid(s) - y;
    for (const auto& [idx, val] : ts.x[i].entries) g.grad_w[idx] += delta * val;
    g.grad_b += delta;
  }
  g.loss /= n;
  for (double& gw : g.grad_w) gw /= n;
  g.grad_b /= n;

  if (cfg.penalty == Penalty::l2) {
    double sq = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      sq += w[t] * w[t];
      g.grad_w[t] += w[t] / cfg.c;
    }
    g.loss += sq / (2.0 * cfg.c);
  }
  return g;
}

std::unique_ptr<LogisticRegressionModel> fit_logistic_regression(
    const TrainingSet& ts, const LogisticRegressionConfig& cfg, std::uint64_t seed) {
  ts.validate();
  if (!(cfg.c > 0.0)) throw ConfigError("logistic regression c must be > 0");
  if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");

  auto model = std::make_unique<LogisticRegressionModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;
  model->weights.assign(ts.feature_dim, 0.0);
  model->bias = 0.0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const LrGradient g = lr_loss_gradient(ts, model->weights, model->bias, cfg);
    if (!std::isfinite(g.loss))
      throw NumericError("logistic regression diverged (non-finite loss) at epoch " +
                         std::to_string(epoch) + "; lower the learning rate");
    for (std::size_t t = 0; t < model->weights.size(); ++t)
      model->weights[t] -= cfg.learning_rate * g.grad_w[t];
    model->bias -= cfg.learning_rate * g.grad_b;
  }
  return model;
}

double svm_objective(const TrainingSet& ts, std::span<const double> w, double b, double c) {
  const double n = static_cast<double>(ts.size());
  const double lambda = 1.0 / (c * n);
  double sq = 0.0;
  for (double wt : w) sq += wt * wt;
  double hinge = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double s = b;
    for (const auto& [idx, val] : ts.x[i].entries) s += val * w[idx];
    const double y = ts.y[i] == 1 ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * s);
  }
  return 0.5 * lambda * sq + hinge / n;
}

std::unique_ptr<LinearSvmModel> fit_linear_svm(const TrainingSet& ts, const LinearSvmConfig& cfg,
                                               std::uint64_t seed) {
  ts.validate();
  if (!(cfg.c > 0.0)) throw ConfigError("svm c must be > 0");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");

  auto model = std::make_unique<LinearSvmModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;
  model->weights.assign(ts.feature_dim, 0.0);
  model->bias = 0.0;

  const std::size_t n = ts.size();
  const double lambda = 1.0 / (cfg.c * static_cast<double>(n));
  Rng rng = Rng(seed).stream("models/svm");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  // w is kept as scale * v so the per-step shrink is O(1) instead of O(V).
  std::vector<double>& v = model->weights;
  double scale = 1.0;

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double y = ts.y[i] == 1 ? 1.0 : -1.0;
      double s = model->bias;
      for (const auto& [idx, val] : ts.x[i].entries) s += val * scale * v[idx];

      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        // first step of the schedule zeroes the weights
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (y * s < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [idx, val] : ts.x[i].entries) v[idx] += step * val;
        model->bias += eta * y;
      }
      if (!std::isfinite(model->bias) || !std::isfinite(scale))
        throw NumericError("svm produced non-finite weights at epoch " + std::to_string(epoch));
    }
  }
  for (double& w : v) w *= scale;
  return model;
}

}  // namespace stormlens::models
