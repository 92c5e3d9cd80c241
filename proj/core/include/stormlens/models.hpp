// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stormlens/features.hpp"
#include "stormlens/rng.hpp"

namespace stormlens::models {

enum class Family {
  naive_bayes,
  logistic_regression,
  decision_tree,
  linear_svm,
  knn,
  random_forest,
  adaboost,
  mlp,
};
inline constexpr int kFamilyCount = 8;
inline constexpr Family kAllFamilies[] = {
    Family::naive_bayes, Family::logistic_regression, Family::decision_tree, Family::linear_svm,
    Family::knn,         Family::random_forest,       Family::adaboost,      Family::mlp,
};

/// Short report names: NB, LR, DT, SVM, KNN, RF, AdaBoost, MNN.
std::string_view family_name(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// Labeled sparse vectors; the uniform fit input.
struct TrainingSet {
  std::vector<features::SparseVector> x;
  std::vector<int> y;  // labels in {0, 1}
  std::uint32_t feature_dim = 0;

  std::size_t size() const { return x.size(); }
  void validate() const;  // throws DataError on contract violations
};

/// A fitted classifier. predict(x) == 1 iff score(x) > threshold(); exact
/// threshold hits resolve to label 0. Scores are monotone in class-1
/// confidence, which is all ROC analysis requires.
class Model {
 public:
  virtual ~Model() = default;

  virtual Family family() const = 0;
  virtual double threshold() const = 0;
  virtual double score(const features::SparseVector& x) const = 0;

  int predict(const features::SparseVector& x) const { return score(x) > threshold() ? 1 : 0; }

  std::vector<double> score_many(std::span<const features::SparseVector> xs) const;
  std::vector<int> predict_many(std::span<const features::SparseVector> xs) const;

  std::uint32_t feature_dim = 0;
  std::uint64_t seed = 0;

 protected:
  void check_dim(const features::SparseVector& x) const;
};

// ---------------------------------------------------------------------------
// Per-family configurations (defaults double as the shipped baseline config).

struct NaiveBayesConfig {
  double alpha = 1.0;  // additive smoothing, > 0
};

enum class Penalty { l2, none };

struct LogisticRegressionConfig {
  Penalty penalty = Penalty::l2;
  double c = 1.0;  // inverse regularization strength, > 0
  double learning_rate = 0.5;
  int epochs = 200;
};

struct DecisionTreeConfig {
  int max_depth = 10;
  int min_leaf = 1;
};

struct LinearSvmConfig {
  double c = 1.0;
  int epochs = 10;
};

struct KnnConfig {
  int k = 5;
};

struct RandomForestConfig {
  int n_trees = 100;
  int max_depth = 12;
  int min_leaf = 1;
  bool bootstrap = true;
  bool feature_subsample = true;  // sqrt(V) features per split
};

struct AdaBoostConfig {
  int n_rounds = 100;
};

struct MlpConfig {
  int hidden = 16;
  double learning_rate = 0.1;
  int epochs = 40;
  int batch_size = 32;
};

using FamilyConfig =
    std::variant<NaiveBayesConfig, LogisticRegressionConfig, DecisionTreeConfig, LinearSvmConfig,
                 KnnConfig, RandomForestConfig, AdaBoostConfig, MlpConfig>;

Family family_of(const FamilyConfig& config);
FamilyConfig default_config(Family f);

// ---------------------------------------------------------------------------
// Concrete models. Learned state is plain data so serialization and tests
// can reach it.

class NaiveBayesModel final : public Model {
 public:
  NaiveBayesConfig config;
  double log_prior[2] = {0.0, 0.0};
  std::vector<double> log_lik[2];  // per-term log likelihoods

  Family family() const override { return Family::naive_bayes; }
  double threshold() const override { return 0.0; }
  /// log P(y=1|x) - log P(y=0|x)
  double score(const features::SparseVector& x) const override;

  friend std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const TrainingSet&,
                                                          const NaiveBayesConfig&, std::uint64_t);
};

class LinearModel : public Model {
 public:
  std::vector<double> weights;
  double bias = 0.0;

  double margin(const features::SparseVector& x) const;
};

class LogisticRegressionModel final : public LinearModel {
 public:
  LogisticRegressionConfig config;

  Family family() const override { return Family::logistic_regression; }
  double threshold() const override { return 0.5; }
  double score(const features::SparseVector& x) const override;  // sigmoid(w.x + b)
};

class LinearSvmModel final : public LinearModel {
 public:
  LinearSvmConfig config;

  Family family() const override { return Family::linear_svm; }
  double threshold() const override { return 0.0; }
  double score(const features::SparseVector& x) const override;  // raw margin
};

/// Binary CART tree stored as a flat node array; node 0 is the root.
struct TreeNode {
  std::uint32_t feature = 0;
  double split = 0.0;  // goes left when x[feature] <= split
  std::int32_t left = -1, right = -1;
  double leaf_score = 0.0;  // positive-class fraction at the leaf

  bool is_leaf() const { return left < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;
  double score(const features::SparseVector& x) const;
};

class DecisionTreeModel final : public Model {
 public:
  DecisionTreeConfig config;
  Tree tree;

  Family family() const override { return Family::decision_tree; }
  double threshold() const override { return 0.5; }
  double score(const features::SparseVector& x) const override;
};

class RandomForestModel final : public Model {
 public:
  RandomForestConfig config;
  std::vector<Tree> trees;

  Family family() const override { return Family::random_forest; }
  double threshold() const override { return 0.5; }
  double score(const features::SparseVector& x) const override;  // mean of tree scores
};

class KnnModel final : public Model {
 public:
  KnnConfig config;
  std::vector<features::SparseVector> train_x;
  std::vector<int> train_y;
  std::vector<double> train_norm;

  Family family() const override { return Family::knn; }
  double threshold() const override { return 0.5; }
  /// Fraction of positive labels among the k nearest neighbors under cosine
  /// distance; distance ties resolve to the lower training index.
  double score(const features::SparseVector& x) const override;

  void rebuild_postings();  // called after fit / deserialization

 private:
  // term -> (train index, weight) postings for sparse dot accumulation
  std::vector<std::vector<std::pair<std::uint32_t, double>>> postings_;
};

struct Stump {
  std::uint32_t feature = 0;
  double split = 0.0;
  int polarity = 1;  // predicts +polarity when x[feature] > split
  double alpha = 0.0;

  int evaluate(const features::SparseVector& x) const;  // -1 or +1
};

class AdaBoostModel final : public Model {
 public:
  AdaBoostConfig config;
  std::vector<Stump> stumps;
  int rounds_run = 0;
  std::string halt_reason;  // empty when all rounds ran

  Family family() const override { return Family::adaboost; }
  double threshold() const override { return 0.0; }
  double score(const features::SparseVector& x) const override;  // sum of alpha * h(x)
};

/// One-hidden-layer network parameters. w1 is column-major: column t holds
/// the hidden weights of input feature t.
struct MlpParams {
  std::uint32_t input_dim = 0;
  int hidden = 0;
  std::vector<double> w1;  // input_dim * hidden
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;
};

class MlpModel final : public Model {
 public:
  MlpConfig config;
  MlpParams params;

  Family family() const override { return Family::mlp; }
  double threshold() const override { return 0.5; }
  double score(const features::SparseVector& x) const override;  // output probability
};

// ---------------------------------------------------------------------------
// Fitting. Every fit is a pure function of (training set, config, seed).

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const TrainingSet& ts, const NaiveBayesConfig& cfg,
                                                 std::uint64_t seed = 0);
std::unique_ptr<LogisticRegressionModel> fit_logistic_regression(const TrainingSet& ts,
                                                                 const LogisticRegressionConfig& cfg,
                                                                 std::uint64_t seed = 0);
std::unique_ptr<DecisionTreeModel> fit_decision_tree(const TrainingSet& ts,
                                                     const DecisionTreeConfig& cfg,
                                                     std::uint64_t seed = 0);
std::unique_ptr<LinearSvmModel> fit_linear_svm(const TrainingSet& ts, const LinearSvmConfig& cfg,
                                               std::uint64_t seed);
std::unique_ptr<KnnModel> fit_knn(const TrainingSet& ts, const KnnConfig& cfg,
                                  std::uint64_t seed = 0);
std::unique_ptr<RandomForestModel> fit_random_forest(const TrainingSet& ts,
                                                     const RandomForestConfig& cfg,
                                                     std::uint64_t seed);
std::unique_ptr<AdaBoostModel> fit_adaboost(const TrainingSet& ts, const AdaBoostConfig& cfg,
                                            std::uint64_t seed = 0);
std::unique_ptr<MlpModel> fit_mlp(const TrainingSet& ts, const MlpConfig& cfg, std::uint64_t seed);

std::unique_ptr<Model> fit(const TrainingSet& ts, const FamilyConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Exposed objective/gradient building blocks (verified against finite
// differences in the test suite).

struct LrGradient {
  double loss = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};
LrGradient lr_loss_gradient(const TrainingSet& ts, std::span<const double> w, double b,
                            const LogisticRegressionConfig& cfg);

double svm_objective(const TrainingSet& ts, std::span<const double> w, double b, double c);

struct MlpGradient {
  double loss = 0.0;
  MlpParams grad;
};
MlpParams mlp_init(std::uint32_t input_dim, int hidden, Rng& rng);
double mlp_forward(const MlpParams& p, const features::SparseVector& x);
MlpGradient mlp_loss_gradient(const MlpParams& p, std::span<const features::SparseVector> xs,
                              std::span<const int> ys);

// ---------------------------------------------------------------------------
// Serialization: versioned JSON blob with the vocabulary fingerprint the
// model was trained against.

void save_model(const std::filesystem::path& path, const Model& model,
                std::uint64_t vocab_fingerprint);

struct LoadedModel {
  std::unique_ptr<Model> model;
  std::uint64_t vocab_fingerprint = 0;
};
LoadedModel load_model(const std::filesystem::path& path);

/// Scores `x` after checking that the vocabulary the caller vectorized with
/// matches the fingerprint stored alongside the model.
double score_checked(const LoadedModel& lm, const features::Vocabulary& vocab,
                     const features::SparseVector& x);

}  // namespace stormlens::models
