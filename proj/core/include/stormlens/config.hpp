// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "stormlens/evaluate.hpp"
#include "stormlens/models.hpp"
#include "stormlens/pipeline.hpp"

namespace stormlens::config {

struct Paths {
  std::filesystem::path registry;
  std::filesystem::path stopwords;
  std::filesystem::path raw_dir;
  std::filesystem::path out_dir;
};

/// One JSON document drives every command; CLI flags and STORMLENS_*
/// environment variables override individual fields. Relative paths resolve
/// against the config file's directory.
struct RunConfig {
  std::uint64_t seed = 42;
  Paths paths;

  bool stemming = true;
  pipeline::FeatureOptions features;

  double train_fraction = 0.30;
  bool stratified_split = false;
  int cv_k = 5;

  eval::BenchmarkProtocol benchmark;
  eval::SelectionMetric selection = eval::SelectionMetric::accuracy;
  bool plots = false;

  std::array<models::FamilyConfig, models::kFamilyCount> family_defaults;
  std::array<eval::HyperGrid, models::kFamilyCount> grids;

  RunConfig();

  const models::FamilyConfig& defaults_for(models::Family f) const {
    return family_defaults[static_cast<std::size_t>(f)];
  }
  const eval::HyperGrid& grid_for(models::Family f) const {
    return grids[static_cast<std::size_t>(f)];
  }
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace stormlens::config
