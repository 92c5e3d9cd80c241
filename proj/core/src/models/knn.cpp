// SPDX-License-Identifier: Apache-2.0

// Lazy k-nearest-neighbors under cosine distance. Dot products accumulate
// over term postings in index order, which keeps the floating-point sums
// identical to a plain sorted-merge dot product.

#include <algorithm>
#include <cmath>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

void KnnModel::rebuild_postings() {
  postings_.assign(feature_dim, {});
  for (std::uint32_t i = 0; i < train_x.size(); ++i)
    for (const auto& [idx, w] : train_x[i].entries) postings_[idx].emplace_back(i, w);
}

double KnnModel::score(const features::SparseVector& x) const {
  check_dim(x);
  const std::size_t n = train_x.size();
  const auto k = static_cast<std::size_t>(config.k);
  const double qnorm = x.norm();

  std::vector<double> dot(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<char> seen(n, 0);
  for (const auto& [idx, w] : x.entries) {
    for (const auto& [i, tw] : postings_[idx]) {
      dot[i] += w * tw;
      if (!seen[i]) {
        seen[i] = 1;
        touched.push_back(i);
      }
    }
  }

  // candidates carry their exact cosine distance; untouched vectors all sit
  // at distance 1 and are merged in by training index
  std::vector<std::pair<double, std::uint32_t>> cand;
  cand.reserve(touched.size());
  for (std::uint32_t i : touched) {
    const double denom = qnorm * train_norm[i];
    const double d = denom > 0.0 ? 1.0 - dot[i] / denom : 1.0;
    cand.emplace_back(d, i);
  }
  // the merge consumes at most k candidates, so only the k smallest matter
  if (cand.size() > k) {
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    cand.resize(k);
  } else {
    std::sort(cand.begin(), cand.end());
  }

  std::size_t votes_pos = 0;
  std::size_t taken = 0;
  std::size_t ci = 0;
  std::uint32_t ui = 0;  // next untouched index
  while (taken < k) {
    while (ui < n && seen[ui]) ++ui;
    const bool have_c = ci < cand.size();
    const bool have_u = ui < n;
    bool take_candidate;
    if (have_c && have_u)
      take_candidate = cand[ci].first < 1.0 || (cand[ci].first == 1.0 && cand[ci].second < ui);
    else if (have_c)
      take_candidate = true;
    else if (have_u)
      take_candidate = false;
    else
      break;
    std::uint32_t pick;
    if (take_candidate) {
      pick = cand[ci].second;
      ++ci;
    } else {
      pick = ui;
      ++ui;
    }
    votes_pos += static_cast<std::size_t>(train_y[pick] == 1);
    ++taken;
  }
  return static_cast<double>(votes_pos) / static_cast<double>(config.k);
}

std::unique_ptr<KnnModel> fit_knn(const TrainingSet& ts, const KnnConfig& cfg, std::uint64_t seed) {
  ts.validate();
  if (cfg.k < 1) throw ConfigError("knn k must be >= 1");
  if (static_cast<std::size_t>(cfg.k) > ts.size())
    throw DataError("knn k=" + std::to_string(cfg.k) + " exceeds training size " +
                    std::to_string(ts.size()));

  auto model = std::make_unique<KnnModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;
  model->train_x = ts.x;
  model->train_y = ts.y;
  model->train_norm.reserve(ts.size());
  for (const auto& v : ts.x) model->train_norm.push_back(v.norm());
  model->rebuild_postings();
  return model;
}

}  // namespace stormlens::models
