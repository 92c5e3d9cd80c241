// SPDX-License-Identifier: Apache-2.0

// One-hidden-layer network: ReLU hidden units, sigmoid output, cross-entropy
// loss, seeded mini-batch gradient descent. Input stays sparse end to end;
// w1 is column-major so a document only touches its own feature columns.

#include <cmath>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }
double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

void hidden_activations(const MlpParams& p, const features::SparseVector& x, std::vector<double>& z) {
  z.assign(static_cast<std::size_t>(p.hidden), 0.0);
  for (int h = 0; h < p.hidden; ++h) z[static_cast<std::size_t>(h)] = p.b1[static_cast<std::size_t>(h)];
  for (const auto& [idx, v] : x.entries) {
    const double* col = &p.w1[static_cast<std::size_t>(idx) * static_cast<std::size_t>(p.hidden)];
    for (int h = 0; h < p.hidden; ++h) z[static_cast<std::size_t>(h)] += v * col[h];
  }
}

double output_logit(const MlpParams& p, const std::vector<double>& z) {
  double s = p.b2;
  for (int h = 0; h < p.hidden; ++h) {
    const double a = z[static_cast<std::size_t>(h)] > 0.0 ? z[static_cast<std::size_t>(h)] : 0.0;
    s += p.w2[static_cast<std::size_t>(h)] * a;
  }
  return s;
}

}  // namespace

MlpParams mlp_init(std::uint32_t input_dim, int hidden, Rng& rng) {
  MlpParams p;
  p.input_dim = input_dim;
  p.hidden = hidden;
  const auto h = static_cast<std::size_t>(hidden);
  p.w1.resize(static_cast<std::size_t>(input_dim) * h);
  p.b1.assign(h, 0.0);
  p.w2.resize(h);
  p.b2 = 0.0;
  const double lim1 = std::sqrt(6.0 / static_cast<double>(input_dim + static_cast<std::uint32_t>(hidden)));
  for (double& w : p.w1) w = rng.uniform(-lim1, lim1);
  const double lim2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
  for (double& w : p.w2) w = rng.uniform(-lim2, lim2);
  return p;
}

double mlp_forward(const MlpParams& p, const features::SparseVector& x) {
  std::vector<double> z;
  hidden_activations(p, x, z);
  return sigmoid(output_logit(p, z));
}

MlpGradient mlp_loss_gradient(const MlpParams& p, std::span<const features::SparseVector> xs,
                              std::span<const int> ys) {
  MlpGradient g;
  g.grad.input_dim = p.input_dim;
  g.grad.hidden = p.hidden;
  g.grad.w1.assign(p.w1.size(), 0.0);
  g.grad.b1.assign(p.b1.size(), 0.0);
  g.grad.w2.assign(p.w2.size(), 0.0);
  g.grad.b2 = 0.0;

  const auto hidden = static_cast<std::size_t>(p.hidden);
  std::vector<double> z;
  const double inv_n = 1.0 / static_cast<double>(xs.size());

  for (std::size_t i = 0; i < xs.size(); ++i) {
    hidden_activations(p, xs[i], z);
    const double s = output_logit(p, z);
    const double y = static_cast<double>(ys[i]);
    g.loss += (softplus(s) - y * s) * inv_n;

    const double gs = (sigmoid(s) - y) * inv_n;
    g.grad.b2 += gs;
    for (std::size_t h = 0; h < hidden; ++h) {
      const double a = z[h] > 0.0 ? z[h] : 0.0;
      g.grad.w2[h] += gs * a;
    }
    for (std::size_t h = 0; h < hidden; ++h) {
      if (z[h] <= 0.0) continue;
      const double gz = gs * p.w2[h];
      g.grad.b1[h] += gz;
      for (const auto& [idx, v] : xs[i].entries)
        g.grad.w1[static_cast<std::size_t>(idx) * hidden + h] += gz * v;
    }
  }
  return g;
}

double MlpModel::score(const features::SparseVector& x) const {
  check_dim(x);
  return mlp_forward(params, x);
}

std::unique_ptr<MlpModel> fit_mlp(const TrainingSet& ts, const MlpConfig& cfg, std::uint64_t seed) {
  ts.validate();
  if (cfg.hidden < 1) throw ConfigError("hidden must be >= 1");
  if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (cfg.batch_size < 1) throw ConfigError("batch_size must be >= 1");

  auto model = std::make_unique<MlpModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;

  Rng rng = Rng(seed).stream("models/mlp");
  model->params = mlp_init(ts.feature_dim, cfg.hidden, rng);
  MlpParams& p = model->params;

  const std::size_t n = ts.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  std::vector<features::SparseVector> batch_x;
  std::vector<int> batch_y;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
      batch_x.clear();
      batch_y.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch_x.push_back(ts.x[order[i]]);
        batch_y.push_back(ts.y[order[i]]);
      }
      const MlpGradient g = mlp_loss_gradient(p, batch_x, batch_y);
      if (!std::isfinite(g.loss))
        throw NumericError("mlp training produced non-finite loss at epoch " +
                           std::to_string(epoch));
      const double lr = cfg.learning_rate;
      for (std::size_t t = 0; t < p.w1.size(); ++t) p.w1[t] -= lr * g.grad.w1[t];
      for (std::size_t h = 0; h < p.b1.size(); ++h) p.b1[h] -= lr * g.grad.b1[h];
      for (std::size_t h = 0; h < p.w2.size(); ++h) p.w2[h] -= lr * g.grad.w2[h];
      p.b2 -= lr * g.grad.b2;
    }
  }
  return model;
}

}  // namespace stormlens::models
