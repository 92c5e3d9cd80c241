// SPDX-License-Identifier: Apache-2.0

// Discrete AdaBoost over depth-1 stumps. Per round the best stump is found
// by walking each feature's value-sorted entries (plus the implicit zero
// group) with cumulative class weights.

#include <algorithm>
#include <cmath>
#include <limits>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

int Stump::evaluate(const features::SparseVector& x) const {
  double v = 0.0;
  const auto it = std::lower_bound(
      x.entries.begin(), x.entries.end(), feature,
      [](const std::pair<std::uint32_t, double>& e, std::uint32_t f) { return e.first < f; });
  if (it != x.entries.end() && it->first == feature) v = it->second;
  return v > split ? polarity : -polarity;
}

double AdaBoostModel::score(const features::SparseVector& x) const {
  check_dim(x);
  double s = 0.0;
  for (const Stump& stump : stumps) s += stump.alpha * stump.evaluate(x);
  return s;
}

namespace {

struct FeatureOrder {
  // entries of one feature sorted by value ascending; zero group implicit
  std::vector<std::pair<double, std::uint32_t>> sorted;  // (value, sample)
};

struct BestStump {
  double error = std::numeric_limits<double>::infinity();
  std::uint32_t feature = 0;
  double split = 0.0;
  int polarity = 1;
};

}  // namespace

std::unique_ptr<AdaBoostModel> fit_adaboost(const TrainingSet& ts, const AdaBoostConfig& cfg,
                                            std::uint64_t seed) {
  ts.validate();
  if (cfg.n_rounds < 1) throw ConfigError("n_rounds must be >= 1");

  auto model = std::make_unique<AdaBoostModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;

  const std::size_t n = ts.size();
  std::vector<FeatureOrder> features(ts.feature_dim);
  for (std::uint32_t i = 0; i < n; ++i)
    for (const auto& [idx, w] : ts.x[i].entries) features[idx].sorted.emplace_back(w, i);
  for (auto& f : features) std::sort(f.sorted.begin(), f.sorted.end());

  std::vector<double> weight(n, 1.0 / static_cast<double>(n));
  constexpr double kEpsMin = 1e-12;

  for (int round = 0; round < cfg.n_rounds; ++round) {
    double total_pos = 0.0;  // weight of y == 1 samples
    for (std::size_t i = 0; i < n; ++i)
      if (ts.y[i] == 1) total_pos += weight[i];
    const double total_neg = 1.0 - total_pos;

    BestStump best;
    for (std::uint32_t f = 0; f < ts.feature_dim; ++f) {
      const auto& sorted = features[f].sorted;
      if (sorted.empty() && n > 0) continue;  // constant zero column

      // weight of zero-valued samples per class
      double zero_pos = total_pos, zero_neg = total_neg;
      for (const auto& [v, i] : sorted) (ts.y[i] == 1 ? zero_pos : zero_neg) -= weight[i];

      // walk value groups ascending, zero group at its ordered position
      double left_pos = 0.0, left_neg = 0.0;
      bool zero_done = sorted.size() == n;  // no zero-valued samples
      std::size_t at = 0;
      double prev_value = 0.0;
      bool have_prev = false;
      while (true) {
        double group_value;
        double gp = 0.0, gn = 0.0;
        if (!zero_done && (at >= sorted.size() || sorted[at].first > 0.0)) {
          group_value = 0.0;
          gp = zero_pos;
          gn = zero_neg;
          zero_done = true;
        } else if (at < sorted.size()) {
          group_value = sorted[at].first;
          while (at < sorted.size() && sorted[at].first == group_value) {
            (ts.y[sorted[at].second] == 1 ? gp : gn) += weight[sorted[at].second];
            ++at;
          }
        } else {
          break;
        }
        if (have_prev) {
          // threshold between the previous group and this one
          const double split = 0.5 * (prev_value + group_value);
          // polarity +1: predict +1 (label 1) when value > split
          const double err_pos = left_pos + (total_neg - left_neg);
          // polarity -1: predict -1 (label 0) when value > split
          const double err_neg = left_neg + (total_pos - left_pos);
          if (err_pos < best.error - 1e-15) {
            best = {err_pos, f, split, +1};
          }
          if (err_neg < best.error - 1e-15) {
            best = {err_neg, f, split, -1};
          }
        }
        left_pos += gp;
        left_neg += gn;
        prev_value = group_value;
        have_prev = true;
        if (zero_done && at >= sorted.size()) break;
      }
    }

    if (!std::isfinite(best.error) || best.error >= 0.5) {
      model->halt_reason = "no stump with weighted error below 0.5";
      break;
    }

    Stump stump;
    stump.feature = best.feature;
    stump.split = best.split;
    stump.polarity = best.polarity;
    const double eps = std::max(best.error, kEpsMin);
    stump.alpha = 0.5 * std::log((1.0 - eps) / eps);
    model->stumps.push_back(stump);
    ++model->rounds_run;

    if (best.error <= kEpsMin) {
      model->halt_reason = "perfect stump";
      break;
    }

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = ts.y[i] == 1 ? 1.0 : -1.0;
      const double h = static_cast<double>(stump.evaluate(ts.x[i]));
      weight[i] *= std::exp(-stump.alpha * y * h);
      norm += weight[i];
    }
    for (double& w : weight) w /= norm;
  }
  return model;
}

}  // namespace stormlens::models
