// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

namespace {

constexpr std::string_view kFamilyNames[] = {"NB", "LR", "DT", "SVM", "KNN", "RF", "AdaBoost", "MNN"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view family_name(Family f) { return kFamilyNames[static_cast<int>(f)]; }

std::optional<Family> family_from_string(std::string_view s) {
  const std::string v = lower(s);
  for (int i = 0; i < kFamilyCount; ++i)
    if (v == lower(kFamilyNames[i])) return static_cast<Family>(i);
  if (v == "naive_bayes" || v == "naivebayes") return Family::naive_bayes;
  if (v == "logistic_regression" || v == "logisticregression") return Family::logistic_regression;
  if (v == "decision_tree" || v == "decisiontree") return Family::decision_tree;
  if (v == "linear_svm") return Family::linear_svm;
  if (v == "kneighbor" || v == "knearest") return Family::knn;
  if (v == "random_forest" || v == "randomforest") return Family::random_forest;
  if (v == "mlp") return Family::mlp;
  return std::nullopt;
}

void TrainingSet::validate() const {
  if (x.size() != y.size()) throw DataError("training set: |x| != |y|");
  if (x.size() < 2) throw DataError("training set needs at least 2 examples");
  bool has0 = false, has1 = false;
  for (int label : y) {
    if (label == 0)
      has0 = true;
    else if (label == 1)
      has1 = true;
    else
      throw DataError("training set label outside {0,1}");
  }
  if (!has0 || !has1) throw DataError("training set must contain both classes");
  for (const auto& vec : x)
    if (!vec.entries.empty() && vec.entries.back().first >= feature_dim)
      throw DataError("training vector index exceeds feature_dim");
}

void Model::check_dim(const features::SparseVector& x) const {
  if (!x.entries.empty() && x.entries.back().first >= feature_dim)
    throw DataError("dimension mismatch: vector index " + std::to_string(x.entries.back().first) +
                    " >= feature_dim " + std::to_string(feature_dim));
}

std::vector<double> Model::score_many(std::span<const features::SparseVector> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(score(x));
  return out;
}

std::vector<int> Model::predict_many(std::span<const features::SparseVector> xs) const {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(predict(x));
  return out;
}

Family family_of(const FamilyConfig& config) {
  return static_cast<Family>(config.index());
}

FamilyConfig default_config(Family f) {
  switch (f) {
    case Family::naive_bayes: return NaiveBayesConfig{};
    case Family::logistic_regression: return LogisticRegressionConfig{};
    case Family::decision_tree: return DecisionTreeConfig{};
    case Family::linear_svm: return LinearSvmConfig{};
    case Family::knn: return KnnConfig{};
    case Family::random_forest: return RandomForestConfig{};
    case Family::adaboost: return AdaBoostConfig{};
    case Family::mlp: return MlpConfig{};
  }
  throw ConfigError("unknown family");
}

std::unique_ptr<Model> fit(const TrainingSet& ts, const FamilyConfig& config, std::uint64_t seed) {
  return std::visit(
      [&](const auto& cfg) -> std::unique_ptr<Model> {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, NaiveBayesConfig>) return fit_naive_bayes(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, LogisticRegressionConfig>)
          return fit_logistic_regression(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, DecisionTreeConfig>)
          return fit_decision_tree(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, LinearSvmConfig>) return fit_linear_svm(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, KnnConfig>) return fit_knn(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, RandomForestConfig>)
          return fit_random_forest(ts, cfg, seed);
        else if constexpr (std::is_same_v<T, AdaBoostConfig>) return fit_adaboost(ts, cfg, seed);
        else return fit_mlp(ts, cfg, seed);
      },
      config);
}

}  // namespace stormlens::models
