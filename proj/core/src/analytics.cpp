// SPDX-License-Identifier: Apache-2.0

#include "stormlens/analytics.hpp"

#include <algorithm>

#include "stormlens/errors.hpp"

namespace stormlens::analytics {

namespace {

void finish_shares(BreakdownTable& table) {
  for (auto& row : table.rows)
    row.share = table.total > 0
                    ? static_cast<double>(row.count) / static_cast<double>(table.total)
                    : 0.0;
}

}  // namespace

BreakdownTable proportions_by_disaster(std::span<const corpus::Dataset> group) {
  if (group.empty()) throw DataError("proportions_by_disaster: empty group");
  BreakdownTable table;
  table.kind = "proportions_by_disaster";
  for (const auto& ds : group) {
    BreakdownRow row;
    row.key = ds.spec.disaster_id;
    row.count = ds.tweets.size();
    table.total += row.count;
    table.rows.push_back(std::move(row));
  }
  finish_shares(table);
  return table;
}

BreakdownTable sentiment_proportions(const corpus::Dataset& ds) {
  BreakdownTable table;
  table.kind = "sentiment_proportions";
  std::uint64_t counts[2] = {0, 0};
  for (const auto& t : ds.tweets) {
    if (!t.label)
      throw DataError(ds.spec.disaster_id + ": unlabeled tweet " + t.id +
                      " in sentiment breakdown");
    ++counts[*t.label];
  }
  if (ds.tweets.empty()) throw DataError(ds.spec.disaster_id + ": empty label set");
  table.rows.push_back({"positive", "", counts[0], 0.0});
  table.rows.push_back({"negative", "", counts[1], 0.0});
  table.total = counts[0] + counts[1];
  finish_shares(table);
  return table;
}

BreakdownTable need_breakdown(const corpus::Dataset& ds) {
  BreakdownTable table;
  table.kind = "need_breakdown";
  std::uint64_t counts[corpus::kNeedCount] = {};
  for (const auto& t : ds.tweets) ++counts[static_cast<int>(t.need)];
  for (int n = 0; n < corpus::kNeedCount; ++n) {
    table.rows.push_back(
        {std::string(corpus::need_name(static_cast<corpus::NeedCategory>(n))), "", counts[n], 0.0});
    table.total += counts[n];
  }
  finish_shares(table);
  return table;
}

BreakdownTable attitude_by_need(const corpus::Dataset& ds) {
  BreakdownTable table;
  table.kind = "attitude_by_need";
  std::uint64_t counts[corpus::kNeedCount][2] = {};
  for (const auto& t : ds.tweets) {
    if (!t.label)
      throw DataError(ds.spec.disaster_id + ": unlabeled tweet " + t.id + " in attitude crosstab");
    ++counts[static_cast<int>(t.need)][*t.label];
  }
  for (int n = 0; n < corpus::kNeedCount; ++n) {
    for (int label : {0, 1}) {
      table.rows.push_back({std::string(corpus::need_name(static_cast<corpus::NeedCategory>(n))),
                            label == 0 ? "positive" : "negative", counts[n][label], 0.0});
      table.total += counts[n][label];
    }
  }
  finish_shares(table);
  return table;
}

double negative_share_of_need(const BreakdownTable& attitude, std::string_view need) {
  std::uint64_t pos = 0, neg = 0;
  for (const auto& row : attitude.rows) {
    if (row.key != need) continue;
    (row.tag == "negative" ? neg : pos) = row.count;
  }
  if (pos + neg == 0) throw DataError("attitude table has no rows for need " + std::string(need));
  return static_cast<double>(neg) / static_cast<double>(pos + neg);
}

BreakdownTable daily_volume(const corpus::Dataset& ds) {
  BreakdownTable table;
  table.kind = "daily_volume";
  const std::int64_t first = days_from_civil(ds.spec.window_start);
  const std::int64_t last = days_from_civil(ds.spec.window_end);
  const std::int64_t dur_first = days_from_civil(ds.spec.duration_start);
  const std::int64_t dur_last = days_from_civil(ds.spec.duration_end);

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(last - first + 1), 0);
  std::uint64_t null_ts = 0, outside = 0;
  for (const auto& t : ds.tweets) {
    if (!t.timestamp) {
      ++null_ts;
      continue;
    }
    const std::int64_t day = day_of(*t.timestamp);
    if (day < first || day > last) {
      ++outside;
      continue;
    }
    ++counts[static_cast<std::size_t>(day - first)];
  }

  for (std::int64_t day = first; day <= last; ++day) {
    BreakdownRow row;
    row.key = format_date(civil_from_days(day));
    row.tag = (day >= dur_first && day <= dur_last) ? "inside" : "outside";
    row.count = counts[static_cast<std::size_t>(day - first)];
    table.total += row.count;
    table.rows.push_back(std::move(row));
  }
  table.excluded = null_ts + outside;
  if (null_ts > 0)
    table.notes.push_back(std::to_string(null_ts) + " tweets without parseable timestamps excluded");
  if (outside > 0)
    table.notes.push_back(std::to_string(outside) + " tweets outside the collection window excluded");
  finish_shares(table);
  return table;
}

}  // namespace stormlens::analytics
