// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stormlens {

/// Calendar date in UTC. All timestamps in this project are UTC; day
/// bucketing must be identical across machines, so no locale or tz database
/// is ever consulted.
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const CivilDate&) const = default;
};

/// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days);

bool valid_civil(const CivilDate& d);

/// Seconds since the epoch -> calendar day (floor).
std::int64_t day_of(std::int64_t epoch_seconds);

/// "YYYY-MM-DD" -> date. Returns nullopt on malformed input.
std::optional<CivilDate> parse_date(std::string_view s);
std::string format_date(const CivilDate& d);

/// Canonical timestamp "YYYY-MM-DDTHH:MM:SSZ" -> epoch seconds.
std::optional<std::int64_t> parse_timestamp(std::string_view s);

/// Lenient variant for upstream dataset files: also accepts a space instead
/// of 'T' and a missing trailing 'Z' (still interpreted as UTC).
std::optional<std::int64_t> parse_timestamp_loose(std::string_view s);

std::string format_timestamp(std::int64_t epoch_seconds);

}  // namespace stormlens
