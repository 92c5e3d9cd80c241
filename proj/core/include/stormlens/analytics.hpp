// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stormlens/corpus.hpp"

namespace stormlens::analytics {

/// One aggregation row. `tag` carries secondary grouping where the table
/// needs it (sentiment of a need crosstab cell, inside/outside flags of a
/// time-series day).
struct BreakdownRow {
  std::string key;
  std::string tag;
  std::uint64_t count = 0;
  double share = 0.0;  // of the table's total
};

/// Mass-conserving aggregation: counts sum to total, shares sum to 1 (when
/// total > 0). `excluded` counts tweets left out of the rows (and why, in
/// `notes`); total covers only counted tweets.
struct BreakdownTable {
  std::string kind;
  std::vector<BreakdownRow> rows;
  std::uint64_t total = 0;
  std::uint64_t excluded = 0;
  std::vector<std::string> notes;
};

/// Tweet count and share per disaster across a group of corpora.
BreakdownTable proportions_by_disaster(std::span<const corpus::Dataset> group);

/// Positive/negative shares; requires a fully labeled dataset.
BreakdownTable sentiment_proportions(const corpus::Dataset& ds);

/// Counts per need category.
BreakdownTable need_breakdown(const corpus::Dataset& ds);

/// need x sentiment crosstab; rows carry the sentiment in `tag`.
BreakdownTable attitude_by_need(const corpus::Dataset& ds);

/// Negative share within one need, from an attitude_by_need table.
double negative_share_of_need(const BreakdownTable& attitude, std::string_view need);

/// Per-day counts across [window_start, window_end]; tag is "inside" or
/// "outside" the disaster duration. Null-timestamp and outside-window tweets
/// are excluded and counted.
BreakdownTable daily_volume(const corpus::Dataset& ds);

}  // namespace stormlens::analytics
