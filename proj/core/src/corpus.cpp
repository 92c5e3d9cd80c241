// SPDX-License-Identifier: Apache-2.0

#include "stormlens/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "stormlens/csv.hpp"
#include "stormlens/errors.hpp"
#include "stormlens/rng.hpp"

namespace stormlens::corpus {

namespace {

constexpr std::string_view kNeedNames[] = {"housing", "transportation", "food",
                                           "medical supplies"};
constexpr std::string_view kTypeNames[] = {"tornado", "hurricane", "flood", "blizzard",
                                           "wildfire"};

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view need_name(NeedCategory n) { return kNeedNames[static_cast<int>(n)]; }

std::optional<NeedCategory> need_from_string(std::string_view s) {
  for (int i = 0; i < kNeedCount; ++i)
    if (s == kNeedNames[i]) return static_cast<NeedCategory>(i);
  // tolerate the underscore spelling used in identifiers
  if (s == "medical_supplies") return NeedCategory::medical_supplies;
  return std::nullopt;
}

std::string_view disaster_type_name(DisasterType t) { return kTypeNames[static_cast<int>(t)]; }

std::optional<DisasterType> disaster_type_from_string(std::string_view s) {
  for (int i = 0; i < 5; ++i)
    if (s == kTypeNames[i]) return static_cast<DisasterType>(i);
  return std::nullopt;
}

void DisasterSpec::validate() const {
  if (days_from_civil(duration_start) > days_from_civil(duration_end))
    throw DataError(disaster_id + ": duration_start after duration_end");
  if (days_from_civil(window_start) > days_from_civil(duration_start))
    throw DataError(disaster_id + ": window_start after duration_start");
  if (days_from_civil(duration_end) > days_from_civil(window_end))
    throw DataError(disaster_id + ": duration_end after window_end");
}

std::vector<std::vector<std::size_t>> FoldAssignment::fold_indices() const {
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    folds[static_cast<std::size_t>(fold_of[i])].push_back(i);
  return folds;
}

std::vector<DisasterSpec> load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open disaster registry: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed registry " + path.string() + ": " + e.what());
  }

  std::vector<DisasterSpec> out;
  for (const auto& item : doc.at("disasters")) {
    DisasterSpec spec;
    spec.disaster_id = item.at("id").get<std::string>();
    spec.name = item.at("name").get<std::string>();
    const auto type = disaster_type_from_string(item.at("type").get<std::string>());
    if (!type) throw ConfigError(spec.disaster_id + ": unknown disaster type");
    spec.type = *type;
    auto date_field = [&](const char* key) {
      const auto d = parse_date(item.at(key).get<std::string>());
      if (!d) throw ConfigError(spec.disaster_id + ": bad date in field " + key);
      return *d;
    };
    spec.duration_start = date_field("duration_start");
    spec.duration_end = date_field("duration_end");
    spec.window_start = date_field("window_start");
    spec.window_end = date_field("window_end");
    spec.keywords = item.at("keywords").get<std::vector<std::string>>();
    if (item.contains("groups")) spec.groups = item.at("groups").get<std::vector<std::string>>();
    spec.validate();
    out.push_back(std::move(spec));
  }
  if (out.empty()) throw ConfigError("registry lists no disasters: " + path.string());
  return out;
}

const DisasterSpec& find_disaster(const std::vector<DisasterSpec>& registry, std::string_view id) {
  for (const auto& spec : registry)
    if (spec.disaster_id == id) return spec;
  throw ConfigError("unknown disaster id: " + std::string(id));
}

namespace {

void note(LoadReport* report, std::size_t LoadReport::*counter, const std::string& msg) {
  if (!report) return;
  ++(report->*counter);
  if (report->messages.size() < 50) report->messages.push_back(msg);
}

std::optional<int> parse_label(const std::string& s) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  return std::nullopt;
}

Dataset load_rows(const std::filesystem::path& path, const DisasterSpec& spec, bool canonical,
                  LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file: " + path.string());

  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw DataError("empty dataset file: " + path.string());

  const std::vector<std::string> canonical_header = {"id",          "text",
                                                     "timestamp",   "disaster_id",
                                                     "need_category", "label"};
  const std::vector<std::string> published_header = {"Date", "Tweet", "Need", "Label"};
  if (fields != (canonical ? canonical_header : published_header))
    throw DataError("malformed header in " + path.string());

  Dataset ds;
  ds.spec = spec;
  std::size_t row = 0;
  while (reader.next(fields)) {
    ++row;
    if (report) ++report->rows_read;
    const std::string where = path.filename().string() + ":" + std::to_string(row + 1);

    std::string id, text, ts_raw, label_raw, need_raw;
    if (canonical) {
      if (fields.size() != 6) {
        note(report, &LoadReport::bad_row, where + ": wrong field count");
        continue;
      }
      id = fields[0];
      text = fields[1];
      ts_raw = fields[2];
      if (fields[3] != spec.disaster_id) {
        note(report, &LoadReport::bad_row, where + ": disaster_id mismatch");
        continue;
      }
      need_raw = fields[4];
      label_raw = fields[5];
    } else {
      if (fields.size() != 4) {
        note(report, &LoadReport::bad_row, where + ": wrong field count");
        continue;
      }
      ts_raw = fields[0];
      text = fields[1];
      need_raw = fields[2];
      label_raw = fields[3];
      char buf[16];
      std::snprintf(buf, sizeof buf, "%06zu", row);
      id = spec.disaster_id + "-" + buf;
    }

    Tweet tweet;
    tweet.id = std::move(id);
    tweet.text = std::move(text);
    tweet.disaster_id = spec.disaster_id;

    if (trimmed(tweet.text).empty()) {
      note(report, &LoadReport::empty_text, where + ": empty text");
      continue;
    }
    const auto need = need_from_string(need_raw);
    if (!need) {
      note(report, &LoadReport::bad_row, where + ": unknown need category '" + need_raw + "'");
      continue;
    }
    tweet.need = *need;

    if (!label_raw.empty()) {
      const auto label = parse_label(label_raw);
      if (!label) {
        note(report, &LoadReport::bad_label, where + ": label '" + label_raw + "' outside {0,1}");
        continue;
      }
      tweet.label = label;
    }

    if (!ts_raw.empty()) {
      tweet.timestamp = canonical ? parse_timestamp(ts_raw) : parse_timestamp_loose(ts_raw);
      if (!tweet.timestamp)
        note(report, &LoadReport::null_timestamp, where + ": unparseable timestamp '" + ts_raw + "'");
    } else {
      note(report, &LoadReport::null_timestamp, where + ": missing timestamp");
    }

    if (report) ++report->rows_loaded;
    ds.tweets.push_back(std::move(tweet));
  }
  return ds;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, const DisasterSpec& spec,
                     LoadReport* report) {
  return load_rows(path, spec, /*canonical=*/true, report);
}

Dataset load_published(const std::filesystem::path& path, const DisasterSpec& spec,
                       LoadReport* report) {
  return load_rows(path, spec, /*canonical=*/false, report);
}

void write_canonical(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset file: " + path.string());
  out << "id,text,timestamp,disaster_id,need_category,label\n";
  for (const Tweet& t : ds.tweets) {
    out << csv::escape(t.id) << ',' << csv::escape_always(t.text) << ','
        << (t.timestamp ? format_timestamp(*t.timestamp) : std::string()) << ','
        << csv::escape(t.disaster_id) << ',' << csv::escape(std::string(need_name(t.need))) << ','
        << (t.label ? std::to_string(*t.label) : std::string()) << '\n';
  }
}

namespace {

std::vector<std::size_t> labeled_indices(const Dataset& ds, int label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.tweets.size(); ++i)
    if (ds.tweets[i].label && *ds.tweets[i].label == label) out.push_back(i);
  return out;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& sorted_indices) {
  Dataset out;
  out.spec = ds.spec;
  out.tweets.reserve(sorted_indices.size());
  for (std::size_t i : sorted_indices) out.tweets.push_back(ds.tweets[i]);
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split_train_test(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed, bool stratified) {
  const std::size_t n = ds.tweets.size();
  if (n < 2) throw DataError("split requires at least 2 tweets");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train_fraction must lie in (0, 1)");
  if (labeled_indices(ds, 0).empty() || labeled_indices(ds, 1).empty())
    throw DataError(ds.spec.disaster_id + ": single-class dataset, cannot train a binary classifier");

  std::vector<std::size_t> train_idx;
  Rng rng = Rng(seed).stream("corpus/split/" + ds.spec.disaster_id);
  if (!stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    train_idx.assign(order.begin(), order.begin() + std::min(n_train, n));
  } else {
    for (int label : {0, 1}) {
      auto members = labeled_indices(ds, label);
      rng.shuffle(members);
      const auto n_train =
          static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
      train_idx.insert(train_idx.end(), members.begin(), members.begin() + std::min(n_train, members.size()));
    }
  }
  std::sort(train_idx.begin(), train_idx.end());

  std::vector<char> in_train(n, 0);
  for (std::size_t i : train_idx) in_train[i] = 1;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_train[i]) test_idx.push_back(i);

  return {subset(ds, train_idx), subset(ds, test_idx)};
}

FoldAssignment stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("k must be at least 2");
  for (const Tweet& t : ds.tweets)
    if (!t.label) throw DataError("stratified_kfold requires a fully labeled dataset");

  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.fold_of.assign(ds.tweets.size(), -1);

  for (int label : {0, 1}) {
    auto members = labeled_indices(ds, label);
    if (members.size() < static_cast<std::size_t>(k))
      throw DataError("class " + std::to_string(label) + " has " + std::to_string(members.size()) +
                      " members, fewer than k=" + std::to_string(k));
    Rng rng = Rng(seed).stream("corpus/fold/label" + std::to_string(label));
    rng.shuffle(members);
    for (std::size_t j = 0; j < members.size(); ++j)
      fa.fold_of[members[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
  }
  return fa;
}

bool in_window(const DisasterSpec& spec, std::int64_t timestamp) {
  const std::int64_t day = day_of(timestamp);
  return day >= days_from_civil(spec.window_start) && day <= days_from_civil(spec.window_end);
}

}  // namespace stormlens::corpus
