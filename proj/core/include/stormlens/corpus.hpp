// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stormlens/timeutil.hpp"

namespace stormlens::corpus {

enum class NeedCategory { housing, transportation, food, medical_supplies };

/// The four collection-keyword need categories, in canonical order.
inline constexpr int kNeedCount = 4;
std::string_view need_name(NeedCategory n);
std::optional<NeedCategory> need_from_string(std::string_view s);

enum class DisasterType { tornado, hurricane, flood, blizzard, wildfire };
std::string_view disaster_type_name(DisasterType t);
std::optional<DisasterType> disaster_type_from_string(std::string_view s);

/// One social-media post. `label` is the sentiment toward the disaster
/// response: 0 = positive, 1 = negative. Unlabeled tweets carry nullopt.
struct Tweet {
  std::string id;
  std::string text;
  std::optional<std::int64_t> timestamp;  // epoch seconds UTC; nullopt = unparseable
  std::string disaster_id;
  NeedCategory need = NeedCategory::housing;
  std::optional<int> label;
};

/// A disaster's identity, duration and collection window. The collection
/// window extends the duration by roughly one week on each side.
struct DisasterSpec {
  std::string disaster_id;
  std::string name;
  DisasterType type = DisasterType::tornado;
  CivilDate duration_start, duration_end;
  CivilDate window_start, window_end;
  std::vector<std::string> keywords;
  std::vector<std::string> groups;  // analysis groups, e.g. "types", "hurricanes"

  void validate() const;  // throws DataError on ordering violations
};

/// An immutable, file-ordered tweet collection for one disaster. Iteration
/// order equals file order; every downstream result is anchored on it.
struct Dataset {
  DisasterSpec spec;
  std::vector<Tweet> tweets;

  std::size_t size() const { return tweets.size(); }
};

/// Row-level accounting from one load.
struct LoadReport {
  std::size_t rows_read = 0;        // data rows seen (header excluded)
  std::size_t rows_loaded = 0;      // tweets kept
  std::size_t bad_label = 0;        // label outside {0,1}: row rejected
  std::size_t bad_row = 0;          // structurally unusable rows: rejected
  std::size_t empty_text = 0;       // blank text: rejected
  std::size_t null_timestamp = 0;   // kept, timestamp set to null
  std::vector<std::string> messages;
};

/// Stratified fold assignment over a labeled dataset.
struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of;  // per-tweet fold index in [0, k)
  std::uint64_t seed = 0;

  std::vector<std::vector<std::size_t>> fold_indices() const;
};

/// Loads the disaster registry (JSON document listing all disasters).
std::vector<DisasterSpec> load_registry(const std::filesystem::path& path);
const DisasterSpec& find_disaster(const std::vector<DisasterSpec>& registry, std::string_view id);

/// Canonical CSV: header `id,text,timestamp,disaster_id,need_category,label`.
Dataset load_dataset(const std::filesystem::path& path, const DisasterSpec& spec,
                     LoadReport* report = nullptr);
void write_canonical(const std::filesystem::path& path, const Dataset& ds);

/// Adapter for the upstream dataset layout (`Date,Tweet,Need,Label`): maps
/// columns onto the canonical model and synthesizes stable row ids.
Dataset load_published(const std::filesystem::path& path, const DisasterSpec& spec,
                       LoadReport* report = nullptr);

/// Seeded uniform split; |train| = round(train_fraction * n). With
/// `stratified` set the split is drawn per class instead (sizes may differ
/// from the uniform rule by rounding).
std::pair<Dataset, Dataset> split_train_test(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed, bool stratified = false);

/// Stratified k-fold: per-class shuffle then round-robin. Requires every
/// class to have at least k labeled members, and all tweets labeled.
FoldAssignment stratified_kfold(const Dataset& ds, int k, std::uint64_t seed);

/// True if the tweet's timestamp lies inside [window_start, window_end].
bool in_window(const DisasterSpec& spec, std::int64_t timestamp);

}  // namespace stormlens::corpus
