// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include <json.hpp>

#include "stormlens/errors.hpp"
#include "stormlens/models.hpp"

namespace stormlens::models {

namespace {

using nlohmann::json;

json config_json(const Model& m);

json params_json(const NaiveBayesModel& m) {
  return json{{"log_prior", {m.log_prior[0], m.log_prior[1]}},
              {"log_lik0", m.log_lik[0]},
              {"log_lik1", m.log_lik[1]}};
}

json params_json(const LinearModel& m) { return json{{"weights", m.weights}, {"bias", m.bias}}; }

json tree_json(const Tree& t) {
  json nodes = json::array();
  for (const TreeNode& n : t.nodes)
    nodes.push_back({n.feature, n.split, n.left, n.right, n.leaf_score});
  return nodes;
}

Tree tree_from_json(const json& nodes) {
  Tree t;
  for (const auto& n : nodes) {
    TreeNode node;
    node.feature = n.at(0).get<std::uint32_t>();
    node.split = n.at(1).get<double>();
    node.left = n.at(2).get<std::int32_t>();
    node.right = n.at(3).get<std::int32_t>();
    node.leaf_score = n.at(4).get<double>();
    t.nodes.push_back(node);
  }
  return t;
}

json sparse_json(const features::SparseVector& v) {
  json idx = json::array(), val = json::array();
  for (const auto& [i, w] : v.entries) {
    idx.push_back(i);
    val.push_back(w);
  }
  return json{{"idx", idx}, {"val", val}};
}

features::SparseVector sparse_from_json(const json& j) {
  features::SparseVector v;
  const auto& idx = j.at("idx");
  const auto& val = j.at("val");
  for (std::size_t i = 0; i < idx.size(); ++i)
    v.entries.emplace_back(idx[i].get<std::uint32_t>(), val[i].get<double>());
  return v;
}

json model_json(const Model& model) {
  json doc;
  doc["format"] = "stormlens-model/1";
  doc["family"] = std::string(family_name(model.family()));
  doc["feature_dim"] = model.feature_dim;
  doc["seed"] = model.seed;
  doc["config"] = config_json(model);

  switch (model.family()) {
    case Family::naive_bayes:
      doc["params"] = params_json(static_cast<const NaiveBayesModel&>(model));
      break;
    case Family::logistic_regression:
      doc["params"] = params_json(static_cast<const LinearModel&>(model));
      break;
    case Family::linear_svm:
      doc["params"] = params_json(static_cast<const LinearModel&>(model));
      break;
    case Family::decision_tree:
      doc["params"] = json{{"tree", tree_json(static_cast<const DecisionTreeModel&>(model).tree)}};
      break;
    case Family::random_forest: {
      const auto& rf = static_cast<const RandomForestModel&>(model);
      json trees = json::array();
      for (const Tree& t : rf.trees) trees.push_back(tree_json(t));
      doc["params"] = json{{"trees", trees}};
      break;
    }
    case Family::knn: {
      const auto& knn = static_cast<const KnnModel&>(model);
      json xs = json::array();
      for (const auto& v : knn.train_x) xs.push_back(sparse_json(v));
      doc["params"] = json{{"train_x", xs}, {"train_y", knn.train_y}};
      break;
    }
    case Family::adaboost: {
      const auto& ab = static_cast<const AdaBoostModel&>(model);
      json stumps = json::array();
      for (const Stump& s : ab.stumps) stumps.push_back({s.feature, s.split, s.polarity, s.alpha});
      doc["params"] = json{{"stumps", stumps},
                           {"rounds_run", ab.rounds_run},
                           {"halt_reason", ab.halt_reason}};
      break;
    }
    case Family::mlp: {
      const auto& mlp = static_cast<const MlpModel&>(model);
      doc["params"] = json{{"hidden", mlp.params.hidden},
                           {"w1", mlp.params.w1},
                           {"b1", mlp.params.b1},
                           {"w2", mlp.params.w2},
                           {"b2", mlp.params.b2}};
      break;
    }
  }
  return doc;
}

json config_json(const Model& m) {
  switch (m.family()) {
    case Family::naive_bayes: {
      const auto& c = static_cast<const NaiveBayesModel&>(m).config;
      return json{{"alpha", c.alpha}};
    }
    case Family::logistic_regression: {
      const auto& c = static_cast<const LogisticRegressionModel&>(m).config;
      return json{{"penalty", c.penalty == Penalty::l2 ? "l2" : "none"},
                  {"c", c.c},
                  {"learning_rate", c.learning_rate},
                  {"epochs", c.epochs}};
    }
    case Family::decision_tree: {
      const auto& c = static_cast<const DecisionTreeModel&>(m).config;
      return json{{"max_depth", c.max_depth}, {"min_leaf", c.min_leaf}};
    }
    case Family::linear_svm: {
      const auto& c = static_cast<const LinearSvmModel&>(m).config;
      return json{{"c", c.c}, {"epochs", c.epochs}};
    }
    case Family::knn: {
      const auto& c = static_cast<const KnnModel&>(m).config;
      return json{{"k", c.k}};
    }
    case Family::random_forest: {
      const auto& c = static_cast<const RandomForestModel&>(m).config;
      return json{{"n_trees", c.n_trees},
                  {"max_depth", c.max_depth},
                  {"min_leaf", c.min_leaf},
                  {"bootstrap", c.bootstrap},
                  {"feature_subsample", c.feature_subsample}};
    }
    case Family::adaboost: {
      const auto& c = static_cast<const AdaBoostModel&>(m).config;
      return json{{"n_rounds", c.n_rounds}};
    }
    case Family::mlp: {
      const auto& c = static_cast<const MlpModel&>(m).config;
      return json{{"hidden", c.hidden},
                  {"learning_rate", c.learning_rate},
                  {"epochs", c.epochs},
                  {"batch_size", c.batch_size}};
    }
  }
  throw ConfigError("unknown family");
}

}  // namespace

void save_model(const std::filesystem::path& path, const Model& model,
                std::uint64_t vocab_fingerprint) {
  json doc = model_json(model);
  char fp[24];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(vocab_fingerprint));
  doc["vocab_fingerprint"] = fp;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out << doc.dump(1, '\t') << '\n';
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (doc.value("format", "") != "stormlens-model/1")
    throw DataError("unsupported model format in " + path.string());

  const auto family = family_from_string(doc.at("family").get<std::string>());
  if (!family) throw DataError("unknown model family in " + path.string());
  const json& params = doc.at("params");
  const json& config = doc.at("config");

  LoadedModel out;
  out.vocab_fingerprint =
      std::stoull(doc.at("vocab_fingerprint").get<std::string>(), nullptr, 16);

  const auto load_common = [](Model& m, const json& j) {
    m.feature_dim = j.at("feature_dim").get<std::uint32_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
  };

  switch (*family) {
    case Family::naive_bayes: {
      auto m = std::make_unique<NaiveBayesModel>();
      m->config.alpha = config.at("alpha").get<double>();
      const auto& priors = params.at("log_prior");
      m->log_prior[0] = priors.at(0).get<double>();
      m->log_prior[1] = priors.at(1).get<double>();
      m->log_lik[0] = params.at("log_lik0").get<std::vector<double>>();
      m->log_lik[1] = params.at("log_lik1").get<std::vector<double>>();
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::logistic_regression: {
      auto m = std::make_unique<LogisticRegressionModel>();
      m->config.penalty = config.at("penalty").get<std::string>() == "l2" ? Penalty::l2 : Penalty::none;
      m->config.c = config.at("c").get<double>();
      m->config.learning_rate = config.at("learning_rate").get<double>();
      m->config.epochs = config.at("epochs").get<int>();
      m->weights = params.at("weights").get<std::vector<double>>();
      m->bias = params.at("bias").get<double>();
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::linear_svm: {
      auto m = std::make_unique<LinearSvmModel>();
      m->config.c = config.at("c").get<double>();
      m->config.epochs = config.at("epochs").get<int>();
      m->weights = params.at("weights").get<std::vector<double>>();
      m->bias = params.at("bias").get<double>();
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::decision_tree: {
      auto m = std::make_unique<DecisionTreeModel>();
      m->config.max_depth = config.at("max_depth").get<int>();
      m->config.min_leaf = config.at("min_leaf").get<int>();
      m->tree = tree_from_json(params.at("tree"));
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::random_forest: {
      auto m = std::make_unique<RandomForestModel>();
      m->config.n_trees = config.at("n_trees").get<int>();
      m->config.max_depth = config.at("max_depth").get<int>();
      m->config.min_leaf = config.at("min_leaf").get<int>();
      m->config.bootstrap = config.at("bootstrap").get<bool>();
      m->config.feature_subsample = config.at("feature_subsample").get<bool>();
      for (const auto& t : params.at("trees")) m->trees.push_back(tree_from_json(t));
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::knn: {
      auto m = std::make_unique<KnnModel>();
      m->config.k = config.at("k").get<int>();
      for (const auto& v : params.at("train_x")) m->train_x.push_back(sparse_from_json(v));
      m->train_y = params.at("train_y").get<std::vector<int>>();
      m->train_norm.clear();
      for (const auto& v : m->train_x) m->train_norm.push_back(v.norm());
      load_common(*m, doc);
      m->rebuild_postings();
      out.model = std::move(m);
      break;
    }
    case Family::adaboost: {
      auto m = std::make_unique<AdaBoostModel>();
      m->config.n_rounds = config.at("n_rounds").get<int>();
      for (const auto& s : params.at("stumps")) {
        Stump stump;
        stump.feature = s.at(0).get<std::uint32_t>();
        stump.split = s.at(1).get<double>();
        stump.polarity = s.at(2).get<int>();
        stump.alpha = s.at(3).get<double>();
        m->stumps.push_back(stump);
      }
      m->rounds_run = params.at("rounds_run").get<int>();
      m->halt_reason = params.at("halt_reason").get<std::string>();
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
    case Family::mlp: {
      auto m = std::make_unique<MlpModel>();
      m->config.hidden = config.at("hidden").get<int>();
      m->config.learning_rate = config.at("learning_rate").get<double>();
      m->config.epochs = config.at("epochs").get<int>();
      m->config.batch_size = config.at("batch_size").get<int>();
      m->params.hidden = params.at("hidden").get<int>();
      m->params.w1 = params.at("w1").get<std::vector<double>>();
      m->params.b1 = params.at("b1").get<std::vector<double>>();
      m->params.w2 = params.at("w2").get<std::vector<double>>();
      m->params.b2 = params.at("b2").get<double>();
      m->params.input_dim = doc.at("feature_dim").get<std::uint32_t>();
      load_common(*m, doc);
      out.model = std::move(m);
      break;
    }
  }
  return out;
}

double score_checked(const LoadedModel& lm, const features::Vocabulary& vocab,
                     const features::SparseVector& x) {
  if (vocab.fingerprint() != lm.vocab_fingerprint)
    throw DataError("vocabulary fingerprint mismatch: model was trained against a different vocabulary");
  return lm.model->score(x);
}

}  // namespace stormlens::models
