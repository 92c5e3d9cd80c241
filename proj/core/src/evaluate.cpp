// SPDX-License-Identifier: Apache-2.0

#include "stormlens/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "stormlens/errors.hpp"
#include "stormlens/rng.hpp"

namespace stormlens::eval {

ConfusionMatrix confusion(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size())
    throw DataError("confusion: prediction/truth length mismatch (" + std::to_string(pred.size()) +
                    " vs " + std::to_string(truth.size()) + ")");
  if (pred.empty()) throw DataError("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if ((pred[i] != 0 && pred[i] != 1) || (truth[i] != 0 && truth[i] != 1))
      throw DataError("confusion: labels must be 0 or 1");
    if (pred[i] == 1)
      truth[i] == 1 ? ++cm.tp : ++cm.fp;
    else
      truth[i] == 1 ? ++cm.fn : ++cm.tn;
  }
  return cm;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> f1_of(std::optional<double> p, std::optional<double> r) {
  if (!p || !r) return std::nullopt;
  if (*p + *r == 0.0) return std::nullopt;
  return 2.0 * *p * *r / (*p + *r);
}

}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("metrics: empty confusion matrix");
  MetricsReport r;
  r.cm = cm;
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  r.precision1 = ratio(cm.tp, cm.tp + cm.fp);
  r.recall1 = ratio(cm.tp, cm.tp + cm.fn);
  r.f1_1 = f1_of(r.precision1, r.recall1);
  r.precision0 = ratio(cm.tn, cm.tn + cm.fn);
  r.recall0 = ratio(cm.tn, cm.tn + cm.fp);
  r.f1_0 = f1_of(r.precision0, r.recall0);
  return r;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size() || scores.empty())
    throw DataError("roc_curve: bad input sizes");
  std::uint64_t p = 0, n = 0;
  for (int t : truth) {
    if (t == 1)
      ++p;
    else if (t == 0)
      ++n;
    else
      throw DataError("roc_curve: labels must be 0 or 1");
  }
  if (p == 0 || n == 0)
    throw DataError("roc_curve: AUC undefined for single-class truth");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  RocCurve roc;
  roc.points.emplace_back(0.0, 0.0);
  std::uint64_t tp = 0, fp = 0;
  std::size_t i = 0;
  double auc = 0.0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    // all samples tied at this score advance as one group
    while (i < order.size() && scores[order[i]] == s) {
      truth[order[i]] == 1 ? ++tp : ++fp;
      ++i;
    }
    const double x = static_cast<double>(fp) / static_cast<double>(n);
    const double y = static_cast<double>(tp) / static_cast<double>(p);
    const auto& prev = roc.points.back();
    auc += (x - prev.first) * (y + prev.second) * 0.5;
    roc.points.emplace_back(x, y);
  }
  roc.auc = auc;
  return roc;
}

double majority_baseline(std::span<const int> labels) {
  if (labels.empty()) throw DataError("majority_baseline: empty labels");
  std::size_t ones = 0;
  for (int l : labels) ones += static_cast<std::size_t>(l == 1);
  const auto n = static_cast<double>(labels.size());
  return std::max(static_cast<double>(ones), n - static_cast<double>(ones)) / n;
}

namespace {

double selection_value(const CvResult& cv, SelectionMetric metric) {
  if (metric == SelectionMetric::accuracy) return cv.mean_accuracy;
  double sum = 0.0;
  std::size_t defined = 0;
  for (const auto& fold : cv.folds)
    if (fold.f1_1) {
      sum += *fold.f1_1;
      ++defined;
    }
  return defined == 0 ? 0.0 : sum / static_cast<double>(defined);
}

CvResult cross_validate_tokenized(const models::FamilyConfig& config,
                                  const std::vector<text::TokenizedDoc>& docs,
                                  const std::vector<int>& labels,
                                  const corpus::FoldAssignment& folds, std::uint64_t seed,
                                  const pipeline::FeatureOptions& opts) {
  CvResult result;
  for (int fold = 0; fold < folds.k; ++fold) {
    std::vector<text::TokenizedDoc> train_docs, test_docs;
    std::vector<int> train_y, test_y;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (folds.fold_of[i] == fold) {
        test_docs.push_back(docs[i]);
        test_y.push_back(labels[i]);
      } else {
        train_docs.push_back(docs[i]);
        train_y.push_back(labels[i]);
      }
    }
    auto featurized = pipeline::featurize(train_docs, train_y, opts);
    const auto model = models::fit(featurized.train, config,
                                   derive_seed(seed, "cv/fold/" + std::to_string(fold)));
    const auto test =
        pipeline::make_training_set(test_docs, test_y, featurized.vocab, opts);
    const auto pred = model->predict_many(test.x);
    result.folds.push_back(metrics(confusion(pred, test_y)));
  }
  double sum = 0.0;
  for (const auto& fold : result.folds) sum += fold.accuracy;
  result.mean_accuracy = sum / static_cast<double>(result.folds.size());
  return result;
}

}  // namespace

CvResult cross_validate(const models::FamilyConfig& config, const corpus::Dataset& ds, int k,
                        std::uint64_t seed, const EvalContext& ctx) {
  const auto labels = pipeline::labels_of(ds);
  const auto folds = corpus::stratified_kfold(ds, k, seed);
  const auto docs = pipeline::tokenize_dataset(ds, *ctx.stop);
  return cross_validate_tokenized(config, docs, labels, folds, seed, ctx.feature_opts);
}

std::string GridPoint::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    out << values[i].first << '=' << values[i].second;
  }
  return out.str();
}

namespace {

double parse_double(const std::string& name, const std::string& value) {
  try {
    return std::stod(value);
  } catch (...) {
    throw ConfigError("grid parameter " + name + ": bad numeric value '" + value + "'");
  }
}

int parse_int(const std::string& name, const std::string& value) {
  try {
    return std::stoi(value);
  } catch (...) {
    throw ConfigError("grid parameter " + name + ": bad integer value '" + value + "'");
  }
}

features::NgramRange parse_ngram(const std::string& value) {
  features::NgramRange r;
  std::string v = value;
  std::erase_if(v, [](char c) { return c == '(' || c == ')' || c == ' '; });
  if (std::sscanf(v.c_str(), "%d,%d", &r.lo, &r.hi) != 2)
    throw ConfigError("grid parameter ngram: expected \"lo,hi\", got '" + value + "'");
  return r;
}

}  // namespace

void apply_hyperparameter(models::FamilyConfig& config, pipeline::FeatureOptions& opts,
                          const std::string& name, const std::string& value) {
  using namespace models;
  if (name == "ngram") {
    opts.ngram = parse_ngram(value);
    return;
  }
  if (name == "min_df") {
    opts.min_df = static_cast<std::uint32_t>(parse_int(name, value));
    return;
  }
  if (auto* nb = std::get_if<NaiveBayesConfig>(&config)) {
    if (name == "alpha") { nb->alpha = parse_double(name, value); return; }
  } else if (auto* lr = std::get_if<LogisticRegressionConfig>(&config)) {
    if (name == "penalty") {
      if (value == "l2") lr->penalty = Penalty::l2;
      else if (value == "none") lr->penalty = Penalty::none;
      else throw ConfigError("grid parameter penalty: unknown value '" + value + "'");
      return;
    }
    if (name == "c") { lr->c = parse_double(name, value); return; }
    if (name == "learning_rate") { lr->learning_rate = parse_double(name, value); return; }
    if (name == "epochs") { lr->epochs = parse_int(name, value); return; }
  } else if (auto* dt = std::get_if<DecisionTreeConfig>(&config)) {
    if (name == "max_depth") { dt->max_depth = parse_int(name, value); return; }
    if (name == "min_leaf") { dt->min_leaf = parse_int(name, value); return; }
  } else if (auto* svm = std::get_if<LinearSvmConfig>(&config)) {
    if (name == "c") { svm->c = parse_double(name, value); return; }
    if (name == "epochs") { svm->epochs = parse_int(name, value); return; }
  } else if (auto* knn = std::get_if<KnnConfig>(&config)) {
    if (name == "k") { knn->k = parse_int(name, value); return; }
  } else if (auto* rf = std::get_if<RandomForestConfig>(&config)) {
    if (name == "n_trees") { rf->n_trees = parse_int(name, value); return; }
    if (name == "max_depth") { rf->max_depth = parse_int(name, value); return; }
    if (name == "min_leaf") { rf->min_leaf = parse_int(name, value); return; }
  } else if (auto* ab = std::get_if<AdaBoostConfig>(&config)) {
    if (name == "n_rounds" || name == "rounds") { ab->n_rounds = parse_int(name, value); return; }
  } else if (auto* mlp = std::get_if<MlpConfig>(&config)) {
    if (name == "hidden") { mlp->hidden = parse_int(name, value); return; }
    if (name == "learning_rate") { mlp->learning_rate = parse_double(name, value); return; }
    if (name == "epochs") { mlp->epochs = parse_int(name, value); return; }
    if (name == "batch_size") { mlp->batch_size = parse_int(name, value); return; }
  }
  throw ConfigError("grid parameter '" + name + "' does not apply to family " +
                    std::string(family_name(models::family_of(config))));
}

std::vector<GridPoint> expand_grid(models::Family family, const HyperGrid& grid,
                                   const pipeline::FeatureOptions& base) {
  for (const auto& [name, values] : grid.axes)
    if (values.empty()) throw ConfigError("grid axis '" + name + "' has no candidate values");
  if (grid.axes.empty()) throw ConfigError("empty hyperparameter grid");

  std::vector<GridPoint> points;
  std::vector<std::size_t> at(grid.axes.size(), 0);
  while (true) {
    GridPoint point;
    point.config = models::default_config(family);
    point.feature_opts = base;
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
      const auto& [name, values] = grid.axes[a];
      apply_hyperparameter(point.config, point.feature_opts, name, values[at[a]]);
      point.values.emplace_back(name, values[at[a]]);
    }
    points.push_back(std::move(point));

    // odometer: last axis varies fastest, first slowest
    std::size_t a = grid.axes.size();
    while (a > 0) {
      --a;
      if (++at[a] < grid.axes[a].second.size()) break;
      at[a] = 0;
      if (a == 0) return points;
    }
  }
}

GridResult grid_search(models::Family family, const HyperGrid& grid, const corpus::Dataset& ds,
                       int k, std::uint64_t seed, const EvalContext& ctx) {
  const auto labels = pipeline::labels_of(ds);
  const auto folds = corpus::stratified_kfold(ds, k, seed);
  const auto docs = pipeline::tokenize_dataset(ds, *ctx.stop);

  GridResult result;
  double best = -1.0;
  for (auto& point : expand_grid(family, grid, ctx.feature_opts)) {
    GridCell cell;
    cell.point = std::move(point);
    cell.cv = cross_validate_tokenized(cell.point.config, docs, labels, folds, seed,
                                       cell.point.feature_opts);
    const double value = selection_value(cell.cv, ctx.selection);
    result.cells.push_back(std::move(cell));
    if (value > best) {
      best = value;
      result.best_index = result.cells.size() - 1;
    }
  }
  return result;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

std::vector<BenchmarkRecord> benchmark(std::span<const models::Family> families,
                                       const corpus::Dataset& ds, const BenchmarkProtocol& protocol,
                                       std::uint64_t seed, const EvalContext& ctx) {
  const auto [train_ds, test_ds] = corpus::split_train_test(ds, protocol.train_fraction, seed);
  const auto train_docs = pipeline::tokenize_dataset(train_ds, *ctx.stop);
  const auto test_docs = pipeline::tokenize_dataset(test_ds, *ctx.stop);
  const auto train_y = pipeline::labels_of(train_ds);
  const auto test_y = pipeline::labels_of(test_ds);

  // featurization shared by all families when its time is not measured
  pipeline::Featurized shared;
  models::TrainingSet shared_test;
  if (!protocol.include_vectorize) {
    shared = pipeline::featurize(train_docs, train_y, ctx.feature_opts);
    shared_test = pipeline::make_training_set(test_docs, test_y, shared.vocab, ctx.feature_opts);
  }

  std::vector<BenchmarkRecord> records;
  for (models::Family family : families) {
    BenchmarkRecord rec;
    rec.family = family;
    rec.disaster_id = ds.spec.disaster_id;
    const auto config = models::default_config(family);
    const std::uint64_t fit_seed =
        derive_seed(seed, "benchmark/" + std::string(models::family_name(family)));

    std::vector<double> fit_times, predict_times;
    std::unique_ptr<models::Model> model;
    std::vector<int> predictions;
    for (int rep = 0; rep < std::max(1, protocol.repetitions); ++rep) {
      if (protocol.include_vectorize) {
        const auto t0 = Clock::now();
        auto featurized = pipeline::featurize(train_docs, train_y, ctx.feature_opts);
        model = models::fit(featurized.train, config, fit_seed);
        fit_times.push_back(seconds_since(t0));

        const auto t1 = Clock::now();
        const auto test =
            pipeline::make_training_set(test_docs, test_y, featurized.vocab, ctx.feature_opts);
        predictions = model->predict_many(test.x);
        predict_times.push_back(seconds_since(t1));
      } else {
        const auto t0 = Clock::now();
        model = models::fit(shared.train, config, fit_seed);
        fit_times.push_back(seconds_since(t0));

        const auto t1 = Clock::now();
        predictions = model->predict_many(shared_test.x);
        predict_times.push_back(seconds_since(t1));
      }
    }
    rec.fit_seconds = median3(fit_times);
    rec.predict_seconds = median3(predict_times);
    rec.accuracy = metrics(confusion(predictions, test_y)).accuracy;
    records.push_back(rec);
  }
  return records;
}

}  // namespace stormlens::eval
