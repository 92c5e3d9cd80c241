// SPDX-License-Identifier: Apache-2.0

// CART trees with Gini-impurity splits over sparse columns. One builder
// serves both the standalone decision tree and the random forest (bootstrap
// multiplicities + per-split feature subsets).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

namespace {

struct Column {
  std::vector<std::pair<std::uint32_t, double>> entries;  // (sample, weight), sample ascending
};

std::vector<Column> build_columns(const TrainingSet& ts) {
  std::vector<Column> cols(ts.feature_dim);
  for (std::uint32_t i = 0; i < ts.size(); ++i)
    for (const auto& [idx, w] : ts.x[i].entries) cols[idx].entries.emplace_back(i, w);
  return cols;
}

double gini(double n0, double n1) {
  const double n = n0 + n1;
  if (n <= 0.0) return 0.0;
  const double p0 = n0 / n, p1 = n1 / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct Split {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child impurity, lower is better
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& ts, const std::vector<Column>& cols, int max_depth, int min_leaf,
              bool feature_subsample, Rng* rng)
      : ts_(ts),
        cols_(cols),
        max_depth_(max_depth),
        min_leaf_(min_leaf),
        feature_subsample_(feature_subsample),
        rng_(rng),
        in_node_(ts.size(), 0),
        value_of_(ts.size(), 0.0),
        value_epoch_(ts.size(), 0) {}

  // multiplicity[i] == 0 drops the sample (out-of-bag under bootstrap)
  Tree build(const std::vector<std::uint32_t>& multiplicity) {
    Tree tree;
    std::vector<std::uint32_t> samples;
    for (std::uint32_t i = 0; i < ts_.size(); ++i)
      if (multiplicity[i] > 0) samples.push_back(i);
    mult_ = &multiplicity;
    grow(tree, samples, 0);
    return tree;
  }

 private:
  std::uint32_t weight(std::uint32_t i) const { return (*mult_)[i]; }

  std::int32_t grow(Tree& tree, const std::vector<std::uint32_t>& samples, int depth) {
    double n0 = 0.0, n1 = 0.0;
    for (std::uint32_t i : samples) (ts_.y[i] == 1 ? n1 : n0) += weight(i);
    const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    tree.nodes[static_cast<std::size_t>(node_id)].leaf_score = (n0 + n1) > 0 ? n1 / (n0 + n1) : 0.0;

    const bool pure = n0 == 0.0 || n1 == 0.0;
    if (pure || depth >= max_depth_ || n0 + n1 < 2 * min_leaf_) return node_id;

    const Split split = best_split(samples, n0, n1);
    if (!split.found) return node_id;

    // fetch this feature's values for the node samples
    ++epoch_;
    for (const auto& [i, w] : cols_[split.feature].entries) {
      value_of_[i] = w;
      value_epoch_[i] = epoch_;
    }
    std::vector<std::uint32_t> left, right;
    for (std::uint32_t i : samples) {
      const double v = value_epoch_[i] == epoch_ ? value_of_[i] : 0.0;
      (v <= split.threshold ? left : right).push_back(i);
    }
    if (left.empty() || right.empty()) return node_id;  // degenerate; keep the leaf

    const std::int32_t l = grow(tree, left, depth + 1);
    const std::int32_t r = grow(tree, right, depth + 1);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.feature = split.feature;
    node.split = split.threshold;
    node.left = l;
    node.right = r;
    return node_id;
  }

  std::vector<std::uint32_t> candidate_features() {
    const auto v = static_cast<std::uint32_t>(ts_.feature_dim);
    if (!feature_subsample_ || rng_ == nullptr) {
      std::vector<std::uint32_t> all(v);
      for (std::uint32_t f = 0; f < v; ++f) all[f] = f;
      return all;
    }
    const auto m = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::floor(std::sqrt(static_cast<double>(v)))));
    std::vector<std::uint32_t> picked;
    picked.reserve(m);
    while (picked.size() < m && picked.size() < v) {
      const auto f = static_cast<std::uint32_t>(rng_->below(v));
      if (std::find(picked.begin(), picked.end(), f) == picked.end()) picked.push_back(f);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  Split best_split(const std::vector<std::uint32_t>& samples, double n0, double n1) {
    ++epoch_;
    for (std::uint32_t i : samples) in_node_[i] = epoch_;
    const double parent = gini(n0, n1);
    const double total = n0 + n1;

    Split best;
    best.impurity = std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 3>> groups;  // value, count0, count1

    for (std::uint32_t f : candidate_features()) {
      groups.clear();
      double nz0 = 0.0, nz1 = 0.0;
      for (const auto& [i, w] : cols_[f].entries) {
        if (in_node_[i] != epoch_) continue;
        const double wt = weight(i);
        if (!groups.empty() && groups.back()[0] == w) {
          groups.back()[ts_.y[i] == 1 ? 2 : 1] += wt;
        } else {
          groups.push_back({w, ts_.y[i] == 1 ? 0.0 : wt, ts_.y[i] == 1 ? wt : 0.0});
        }
        (ts_.y[i] == 1 ? nz1 : nz0) += wt;
      }
      // column entries are sample-ordered; sort value groups ascending
      std::sort(groups.begin(), groups.end(),
                [](const auto& a, const auto& b) { return a[0] < b[0]; });
      merge_adjacent(groups);

      const double z0 = n0 - nz0, z1 = n1 - nz1;
      if (z0 + z1 > 0.0) insert_zero_group(groups, z0, z1);
      if (groups.size() < 2) continue;

      double l0 = 0.0, l1 = 0.0;
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        l0 += groups[g][1];
        l1 += groups[g][2];
        const double r0 = n0 - l0, r1 = n1 - l1;
        if (l0 + l1 < min_leaf_ || r0 + r1 < min_leaf_) continue;
        const double child =
            ((l0 + l1) * gini(l0, l1) + (r0 + r1) * gini(r0, r1)) / total;
        // zero-gain splits are allowed (XOR-style data needs them); splits
        // that would make a child worse than the parent are not
        if (child > parent + 1e-12) continue;
        if (child < best.impurity - 1e-12) {
          best.found = true;
          best.feature = f;
          best.threshold = 0.5 * (groups[g][0] + groups[g + 1][0]);
          best.impurity = child;
        }
      }
    }
    return best;
  }

  static void merge_adjacent(std::vector<std::array<double, 3>>& groups) {
    std::size_t out = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (out > 0 && groups[out - 1][0] == groups[g][0]) {
        groups[out - 1][1] += groups[g][1];
        groups[out - 1][2] += groups[g][2];
      } else {
        groups[out++] = groups[g];
      }
    }
    groups.resize(out);
  }

  static void insert_zero_group(std::vector<std::array<double, 3>>& groups, double z0, double z1) {
    const auto pos = std::lower_bound(groups.begin(), groups.end(), 0.0,
                                      [](const auto& g, double v) { return g[0] < v; });
    groups.insert(pos, {0.0, z0, z1});
  }

  const TrainingSet& ts_;
  const std::vector<Column>& cols_;
  const int max_depth_;
  const int min_leaf_;
  const bool feature_subsample_;
  Rng* rng_;
  const std::vector<std::uint32_t>* mult_ = nullptr;

  std::vector<std::uint32_t> in_node_;
  std::vector<double> value_of_;
  std::vector<std::uint32_t> value_epoch_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

double Tree::score(const features::SparseVector& x) const {
  std::int32_t at = 0;
  while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
    const TreeNode& node = nodes[static_cast<std::size_t>(at)];
    double v = 0.0;
    const auto it = std::lower_bound(
        x.entries.begin(), x.entries.end(), node.feature,
        [](const std::pair<std::uint32_t, double>& e, std::uint32_t f) { return e.first < f; });
    if (it != x.entries.end() && it->first == node.feature) v = it->second;
    at = v <= node.split ? node.left : node.right;
  }
  return nodes[static_cast<std::size_t>(at)].leaf_score;
}

double DecisionTreeModel::score(const features::SparseVector& x) const {
  check_dim(x);
  return tree.score(x);
}

double RandomForestModel::score(const features::SparseVector& x) const {
  check_dim(x);
  double sum = 0.0;
  for (const Tree& t : trees) sum += t.score(x);
  return sum / static_cast<double>(trees.size());
}

std::unique_ptr<DecisionTreeModel> fit_decision_tree(const TrainingSet& ts,
                                                     const DecisionTreeConfig& cfg,
                                                     std::uint64_t seed) {
  ts.validate();
  if (cfg.max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (cfg.min_leaf < 1) throw ConfigError("min_leaf must be >= 1");

  auto model = std::make_unique<DecisionTreeModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;

  const auto cols = build_columns(ts);
  TreeBuilder builder(ts, cols, cfg.max_depth, cfg.min_leaf, /*feature_subsample=*/false, nullptr);
  model->tree = builder.build(std::vector<std::uint32_t>(ts.size(), 1));
  return model;
}

std::unique_ptr<RandomForestModel> fit_random_forest(const TrainingSet& ts,
                                                     const RandomForestConfig& cfg,
                                                     std::uint64_t seed) {
  ts.validate();
  if (cfg.n_trees < 1) throw ConfigError("n_trees must be >= 1");
  if (cfg.max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (cfg.min_leaf < 1) throw ConfigError("min_leaf must be >= 1");

  auto model = std::make_unique<RandomForestModel>();
  model->config = cfg;
  model->feature_dim = ts.feature_dim;
  model->seed = seed;

  const auto cols = build_columns(ts);
  const std::size_t n = ts.size();
  model->trees.reserve(static_cast<std::size_t>(cfg.n_trees));
  for (int t = 0; t < cfg.n_trees; ++t) {
    Rng tree_rng = Rng(seed).stream("models/rf/tree/" + std::to_string(t));
    std::vector<std::uint32_t> mult(n, 1);
    if (cfg.bootstrap) {
      std::fill(mult.begin(), mult.end(), 0);
      for (std::size_t d = 0; d < n; ++d) ++mult[tree_rng.below(n)];
    }
    TreeBuilder builder(ts, cols, cfg.max_depth, cfg.min_leaf, cfg.feature_subsample, &tree_rng);
    model->trees.push_back(builder.build(mult));
  }
  return model;
}

}  // namespace stormlens::models
