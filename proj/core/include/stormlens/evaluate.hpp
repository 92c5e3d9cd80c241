// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stormlens/corpus.hpp"
#include "stormlens/models.hpp"
#include "stormlens/pipeline.hpp"

namespace stormlens::eval {

/// 2x2 counts with class 1 (negative sentiment) as the detection target.
struct ConfusionMatrix {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
};

ConfusionMatrix confusion(std::span<const int> pred, std::span<const int> truth);

/// Accuracy plus per-class precision/recall/F1. Cells whose denominator is
/// zero are undefined (nullopt), never NaN, and render as "-" in reports.
struct MetricsReport {
  ConfusionMatrix cm;
  double accuracy = 0.0;
  std::optional<double> precision1, recall1, f1_1;
  std::optional<double> precision0, recall0, f1_0;
};

MetricsReport metrics(const ConfusionMatrix& cm);

/// ROC curve swept over distinct score values descending; tied scores
/// advance as one group. auc is the trapezoidal integral of the points.
struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.0;
};

RocCurve roc_curve(std::span<const double> scores, std::span<const int> truth);

/// Cross-validation over a stratified fold assignment. The vocabulary is
/// rebuilt on each fold's training side; fold test sets are exactly the
/// fold partition.
struct CvResult {
  std::vector<MetricsReport> folds;
  double mean_accuracy = 0.0;
};

enum class SelectionMetric { accuracy, f1 };

struct EvalContext {
  const text::StopList* stop = nullptr;
  pipeline::FeatureOptions feature_opts;
  SelectionMetric selection = SelectionMetric::accuracy;
};

CvResult cross_validate(const models::FamilyConfig& config, const corpus::Dataset& ds, int k,
                        std::uint64_t seed, const EvalContext& ctx);

/// One hyperparameter point: named values plus the feature options they
/// imply (the n-gram range is a tunable too).
struct GridPoint {
  models::FamilyConfig config;
  pipeline::FeatureOptions feature_opts;
  std::vector<std::pair<std::string, std::string>> values;  // name -> rendered value

  std::string describe() const;
};

/// Per-family hyperparameter grid: ordered (name -> candidate list). The
/// Cartesian product is enumerated with the first parameter varying slowest;
/// grid-search ties resolve to the earliest point in that order.
struct HyperGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
};

std::vector<GridPoint> expand_grid(models::Family family, const HyperGrid& grid,
                                   const pipeline::FeatureOptions& base);

/// Sets one named hyperparameter (model or featurization) from its rendered
/// value; shared by grid expansion and config parsing.
void apply_hyperparameter(models::FamilyConfig& config, pipeline::FeatureOptions& opts,
                          const std::string& name, const std::string& value);

struct GridCell {
  GridPoint point;
  CvResult cv;
};

struct GridResult {
  std::size_t best_index = 0;
  std::vector<GridCell> cells;

  const GridCell& best() const { return cells[best_index]; }
};

GridResult grid_search(models::Family family, const HyperGrid& grid, const corpus::Dataset& ds,
                       int k, std::uint64_t seed, const EvalContext& ctx);

/// Wall-clock fit/predict timing on a shared train/test split.
struct BenchmarkProtocol {
  double train_fraction = 0.30;
  int repetitions = 3;             // medians are reported
  bool include_vectorize = false;  // fold vocabulary+vectorize time into fit
};

struct BenchmarkRecord {
  models::Family family = models::Family::naive_bayes;
  std::string disaster_id;
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;
  double accuracy = 0.0;
};

std::vector<BenchmarkRecord> benchmark(std::span<const models::Family> families,
                                       const corpus::Dataset& ds, const BenchmarkProtocol& protocol,
                                       std::uint64_t seed, const EvalContext& ctx);

/// Majority-class share of the labels: the accuracy floor a model must beat.
double majority_baseline(std::span<const int> labels);

}  // namespace stormlens::eval
