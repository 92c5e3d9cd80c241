// SPDX-License-Identifier: Apache-2.0

#include "stormlens/config.hpp"

#include <fstream>

#include <json.hpp>

#include "stormlens/errors.hpp"

namespace stormlens::config {

namespace {

// ordered_json keeps the file's key order; grid axis order is meaningful
// (first axis varies slowest, ties go to the earliest cell).
using json = nlohmann::ordered_json;

std::string render(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

eval::HyperGrid parse_grid(const json& axes) {
  eval::HyperGrid grid;
  for (const auto& [name, values] : axes.items()) {
    std::vector<std::string> rendered;
    for (const auto& v : values) rendered.push_back(render(v));
    grid.axes.emplace_back(name, std::move(rendered));
  }
  return grid;
}

}  // namespace

RunConfig::RunConfig() {
  for (int f = 0; f < models::kFamilyCount; ++f) {
    family_defaults[static_cast<std::size_t>(f)] =
        models::default_config(static_cast<models::Family>(f));
    grids[static_cast<std::size_t>(f)].axes.clear();
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }

  RunConfig cfg;
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto resolve = [&base](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  try {
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();

    const auto& paths = doc.at("paths");
    cfg.paths.registry = resolve(paths.at("registry").get<std::string>());
    cfg.paths.stopwords = resolve(paths.at("stopwords").get<std::string>());
    cfg.paths.raw_dir = resolve(paths.value("raw_dir", "out/raw"));
    cfg.paths.out_dir = resolve(paths.value("out_dir", "out"));

    if (doc.contains("preprocess"))
      cfg.stemming = doc["preprocess"].value("stemming", true);

    if (doc.contains("features")) {
      const auto& f = doc["features"];
      cfg.features.ngram.lo = f.value("ngram_lo", 1);
      cfg.features.ngram.hi = f.value("ngram_hi", 1);
      cfg.features.min_df = f.value("min_df", 1u);
      const std::string idf = f.value("idf", "paper");
      if (idf == "paper")
        cfg.features.vectorizer.idf = features::IdfVariant::paper;
      else if (idf == "smooth")
        cfg.features.vectorizer.idf = features::IdfVariant::smooth;
      else
        throw ConfigError("features.idf must be \"paper\" or \"smooth\"");
      cfg.features.vectorizer.sublinear_tf = f.value("sublinear_tf", false);
      cfg.features.vectorizer.l2_normalize = f.value("l2_normalize", false);
    }

    if (doc.contains("split")) {
      cfg.train_fraction = doc["split"].value("train_fraction", 0.30);
      cfg.stratified_split = doc["split"].value("stratified", false);
    }
    if (doc.contains("cv")) cfg.cv_k = doc["cv"].value("k", 5);

    if (doc.contains("benchmark")) {
      cfg.benchmark.repetitions = doc["benchmark"].value("repetitions", 3);
      cfg.benchmark.include_vectorize = doc["benchmark"].value("include_vectorize", false);
    }
    cfg.benchmark.train_fraction = cfg.train_fraction;

    if (doc.value("selection", "accuracy") == std::string("f1"))
      cfg.selection = eval::SelectionMetric::f1;

    if (doc.contains("defaults")) {
      for (const auto& [fam_name, params] : doc["defaults"].items()) {
        const auto family = models::family_from_string(fam_name);
        if (!family) throw ConfigError("defaults: unknown family '" + fam_name + "'");
        auto& fc = cfg.family_defaults[static_cast<std::size_t>(*family)];
        pipeline::FeatureOptions scratch = cfg.features;
        for (const auto& [name, value] : params.items())
          eval::apply_hyperparameter(fc, scratch, name, render(value));
      }
    }

    if (doc.contains("grids")) {
      for (const auto& [fam_name, axes] : doc["grids"].items()) {
        const auto family = models::family_from_string(fam_name);
        if (!family) throw ConfigError("grids: unknown family '" + fam_name + "'");
        cfg.grids[static_cast<std::size_t>(*family)] = parse_grid(axes);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return cfg;
}

}  // namespace stormlens::config
