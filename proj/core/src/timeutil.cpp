// SPDX-License-Identifier: Apache-2.0

#include "stormlens/timeutil.hpp"

#include <charconv>
#include <cstdio>

namespace stormlens {

namespace {

// Howard Hinnant's civil-days algorithms (public domain formulation).
std::int64_t days_from_civil_impl(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;             // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

std::int64_t days_from_civil(const CivilDate& d) {
  return days_from_civil_impl(d.year, d.month, d.day);
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

bool valid_civil(const CivilDate& d) {
  if (d.month < 1 || d.month > 12 || d.day < 1) return false;
  return civil_from_days(days_from_civil(d)) == d;
}

std::int64_t day_of(std::int64_t epoch_seconds) {
  std::int64_t d = epoch_seconds / 86400;
  if (epoch_seconds % 86400 < 0) --d;
  return d;
}

std::optional<CivilDate> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  CivilDate d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
      !parse_int(s.substr(8, 2), d.day))
    return std::nullopt;
  if (!valid_civil(d)) return std::nullopt;
  return d;
}

std::string format_date(const CivilDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

namespace {

std::optional<std::int64_t> parse_ts(std::string_view s, bool strict) {
  bool has_z = !s.empty() && s.back() == 'Z';
  if (strict && !has_z) return std::nullopt;
  if (has_z) s.remove_suffix(1);
  if (s.size() != 19) return std::nullopt;
  const char sep = s[10];
  if (sep != 'T' && (strict || sep != ' ')) return std::nullopt;
  auto date = parse_date(s.substr(0, 10));
  if (!date) return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!parse_int(s.substr(11, 2), hh) || !parse_int(s.substr(14, 2), mm) ||
      !parse_int(s.substr(17, 2), ss))
    return std::nullopt;
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59) return std::nullopt;
  return days_from_civil(*date) * 86400 + hh * 3600 + mm * 60 + ss;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(std::string_view s) { return parse_ts(s, true); }

std::optional<std::int64_t> parse_timestamp_loose(std::string_view s) { return parse_ts(s, false); }

std::string format_timestamp(std::int64_t epoch_seconds) {
  const std::int64_t day = day_of(epoch_seconds);
  const CivilDate d = civil_from_days(day);
  std::int64_t rem = epoch_seconds - day * 86400;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

}  // namespace stormlens
