// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

double NaiveBayesModel::score(const features::SparseVector& x) const {
  check_dim(x);
  double s = log_prior[1] - log_prior[0];
  for (const auto& [idx, w] : x.entries) s += w * (log_lik[1][idx] - log_lik[0][idx]);
  return s;
}

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const TrainingSet& ts, const NaiveBayesConfig& cfg,
                                                 std::uint64_t seed) {
  ts.validate();
  if (!(cfg.alpha > 0.0)) throw ConfigError("naive bayes alpha must be > 0");

  auto model = std::make_unique<NaiveBayesModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;

  const std::size_t v = ts.feature_dim;
  std::vector<double> sums[2] = {std::vector<double>(v, 0.0), std::vector<double>(v, 0.0)};
  double class_count[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const int c = ts.y[i];
    class_count[c] += 1.0;
    for (const auto& [idx, w] : ts.x[i].entries) {
      if (w < 0.0)
        throw DataError(
            "naive bayes requires non-negative feature weights; "
            "vectorize with the smooth idf variant or raw term counts");
      sums[c][idx] += w;
    }
  }

  const double n = static_cast<double>(ts.size());
  for (int c : {0, 1}) {
    model->log_prior[c] = std::log(class_count[c] / n);
    double total = 0.0;
    for (double s : sums[c]) total += s;
    const double denom = std::log(cfg.alpha * static_cast<double>(v) + total);
    model->log_lik[c].resize(v);
    for (std::size_t t = 0; t < v; ++t)
      model->log_lik[c][t] = std::log(cfg.alpha + sums[c][t]) - denom;
  }
  return model;
}

}  // namespace stormlens::models
