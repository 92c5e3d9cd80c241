// SPDX-License-Identifier: Apache-2.0

#include "stormlens/synth.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stormlens/csv.hpp"
#include "stormlens/errors.hpp"
#include "stormlens/rng.hpp"
#include "stormlens/timeutil.hpp"

namespace stormlens::synth {

namespace {

// Posting-volume shape over the collection window.
enum class VolumePattern {
  during_peak,  // most tweets inside the duration (tornado, blizzard)
  late_peak,    // ramping toward the latter duration stages (hurricanes, floods)
  post_peak,    // bulk of the volume after the duration ends (wildfires)
};

struct Profile {
  const char* disaster_id;
  std::size_t rows;
  // housing, transportation, food, medical supplies
  std::array<double, 4> need_share;
  std::array<double, 4> negative_given_need;
  VolumePattern pattern;
};

// Row counts reproduce the source dataset's per-disaster totals; the need
// mixes and per-need negative rates realize the corpus-level superlatives
// (modal need, most-negative need, negative majority).
constexpr Profile kProfiles[] = {
    {"tornado_2011", 3372, {0.34, 0.30, 0.20, 0.16}, {0.64, 0.78, 0.60, 0.58},
     VolumePattern::during_peak},
    {"sandy_2012", 2161, {0.36, 0.22, 0.24, 0.18}, {0.66, 0.60, 0.62, 0.58},
     VolumePattern::late_peak},
    {"floods_2013", 3819, {0.24, 0.36, 0.22, 0.18}, {0.66, 0.70, 0.64, 0.60},
     VolumePattern::late_peak},
    {"blizzard_2016", 3915, {0.24, 0.30, 0.28, 0.18}, {0.62, 0.68, 0.64, 0.60},
     VolumePattern::during_peak},
    {"matthew_2016", 5189, {0.22, 0.34, 0.24, 0.20}, {0.60, 0.64, 0.62, 0.74},
     VolumePattern::late_peak},
    {"harvey_2017", 7437, {0.22, 0.28, 0.34, 0.16}, {0.62, 0.66, 0.78, 0.60},
     VolumePattern::late_peak},
    {"wildfires_2018", 4694, {0.28, 0.30, 0.24, 0.18}, {0.66, 0.68, 0.64, 0.62},
     VolumePattern::post_peak},
    {"michael_2018", 4211, {0.22, 0.26, 0.36, 0.16}, {0.60, 0.64, 0.66, 0.58},
     VolumePattern::late_peak},
    {"dorian_2019", 7195, {0.26, 0.28, 0.26, 0.20}, {0.58, 0.62, 0.60, 0.56},
     VolumePattern::late_peak},
};

const Profile& profile_for(const std::string& disaster_id) {
  for (const Profile& p : kProfiles)
    if (disaster_id == p.disaster_id) return p;
  throw ConfigError("no generator profile for disaster '" + disaster_id + "'");
}

// --- phrase banks -----------------------------------------------------------

const std::vector<std::string>& positive_intros() {
  static const std::vector<std::string> v = {
      "So thankful that", "Big thanks,",       "Really glad that",  "Grateful that",
      "Relieved that",    "Amazing work,",     "Impressed that",    "Wonderful news,",
      "So happy that",    "Huge credit,",      "Feeling blessed,",  "Great response,",
  };
  return v;
}

const std::vector<std::string>& negative_intros() {
  static const std::vector<std::string> v = {
      "Furious that",     "Still waiting,",     "So frustrated that", "Angry that",
      "Disappointed that", "Unacceptable that", "Fed up,",            "Outraged that",
      "Desperate here,",  "Nobody cares that",  "Shameful that",      "Terrible that",
  };
  return v;
}

const std::vector<std::string>& agencies() {
  static const std::vector<std::string> v = {
      "@fema",        "@RedCross",      "the governor", "rescue teams",   "volunteers",
      "@NationalGuard", "relief workers", "the mayor",  "first responders", "aid groups",
  };
  return v;
}

// need x sentiment phrase banks; index by [need][label]
const std::vector<std::string>& need_phrase(int need, int label) {
  static const std::vector<std::string> housing_pos = {
      "shelters are open for everyone",  "found housing for displaced families",
      "temporary housing was provided", "shelter space available downtown",
      "opened more shelters tonight",   "housing vouchers arrived quickly",
  };
  static const std::vector<std::string> housing_neg = {
      "no shelter anywhere near us",     "housing assistance was denied again",
      "shelters are full and locked",    "families still homeless tonight",
      "housing office stays closed",     "sleeping outside, zero shelter beds",
  };
  static const std::vector<std::string> transport_pos = {
      "roads cleared this morning",      "free rides offered to victims",
      "evacuation buses are running",    "bridges reopened ahead of schedule",
      "fuel trucks escorted in",         "transit is moving people out safely",
  };
  static const std::vector<std::string> transport_neg = {
      "roads still blocked everywhere",  "no evacuation buses showed up",
      "stranded on the highway for hours", "transit is shut down completely",
      "bridges closed with no detour",   "fuel stations abandoned, cannot evacuate",
  };
  static const std::vector<std::string> food_pos = {
      "food trucks arrived downtown",    "hot meals served at the shelter",
      "groceries donated by neighbors",  "water and food supplies delivered",
      "pantry restocked for the week",   "meal lines moving fast today",
  };
  static const std::vector<std::string> food_neg = {
      "stores are empty, no food anywhere", "waiting hours for a single meal",
      "food supplies ran out already",   "water undrinkable and no groceries",
      "pantry shelves stripped bare",    "kids hungry, meal site never opened",
  };
  static const std::vector<std::string> medical_pos = {
      "medical supplies delivered overnight", "clinics are open and staffed",
      "medicine restocked at the pharmacy",   "nurses volunteering around the clock",
      "ambulances reached every block",       "insulin shipments made it through",
  };
  static const std::vector<std::string> medical_neg = {
      "no medicine left on shelves",     "hospitals overwhelmed and understaffed",
      "medical supplies never arrived",  "cannot refill prescriptions anywhere",
      "clinic doors locked for days",    "ambulances not reaching the flooded blocks",
  };
  static const std::vector<std::string>* banks[4][2] = {
      {&housing_pos, &housing_neg},
      {&transport_pos, &transport_neg},
      {&food_pos, &food_neg},
      {&medical_pos, &medical_neg},
  };
  return *banks[need][label];
}

const std::vector<std::string>& usernames() {
  static const std::vector<std::string> v = {
      "stormwatcher", "gulf_news_now", "txweather",   "reliefupdates", "coastal_mom",
      "cityalerts",   "weatherdesk",   "localvoice",  "newsfeed_se",   "neighborly",
  };
  return v;
}

std::string disaster_tag(const corpus::DisasterSpec& spec) {
  // "#harvey" style hashtag from the first keyword's last disaster word
  std::string base = spec.keywords.empty() ? spec.disaster_id : spec.keywords.front();
  const auto plus = base.find(" + ");
  if (plus != std::string::npos) base.resize(plus);
  const auto space = base.find_last_of(' ');
  if (space != std::string::npos) base = base.substr(space + 1);
  return "#" + base;
}

std::string base36(std::uint64_t v, int digits) {
  static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = alphabet[v % 36];
    v /= 36;
  }
  return out;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

int pick_categorical(Rng& rng, const std::array<double, 4>& shares) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += shares[static_cast<std::size_t>(i)];
    if (u < acc) return i;
  }
  return 3;
}

// --- posting-time model ------------------------------------------------------

std::vector<double> day_weights(const corpus::DisasterSpec& spec, VolumePattern pattern) {
  const std::int64_t first = days_from_civil(spec.window_start);
  const std::int64_t last = days_from_civil(spec.window_end);
  const std::int64_t dur_first = days_from_civil(spec.duration_start);
  const std::int64_t dur_last = days_from_civil(spec.duration_end);
  const auto n_days = static_cast<std::size_t>(last - first + 1);

  double pre_mass = 0.0, during_mass = 0.0, post_mass = 0.0;
  switch (pattern) {
    case VolumePattern::during_peak: pre_mass = 0.10; during_mass = 0.70; post_mass = 0.20; break;
    case VolumePattern::late_peak:   pre_mass = 0.08; during_mass = 0.62; post_mass = 0.30; break;
    case VolumePattern::post_peak:   pre_mass = 0.06; during_mass = 0.40; post_mass = 0.54; break;
  }

  std::vector<double> weights(n_days, 0.0);
  std::size_t n_pre = 0, n_during = 0, n_post = 0;
  for (std::int64_t d = first; d <= last; ++d) {
    if (d < dur_first) ++n_pre;
    else if (d <= dur_last) ++n_during;
    else ++n_post;
  }
  for (std::int64_t d = first; d <= last; ++d) {
    const auto i = static_cast<std::size_t>(d - first);
    if (d < dur_first) {
      weights[i] = n_pre ? pre_mass / static_cast<double>(n_pre) : 0.0;
    } else if (d <= dur_last) {
      // ramp across the duration; late_peak loads the latter stages
      const double frac = n_during > 1
                              ? static_cast<double>(d - dur_first) / static_cast<double>(n_during - 1)
                              : 0.5;
      double shape = 1.0;
      if (pattern == VolumePattern::late_peak) shape = 0.4 + 1.2 * frac;
      else if (pattern == VolumePattern::during_peak) shape = 1.3 - 0.6 * std::abs(frac - 0.4);
      weights[i] = shape;
    } else {
      weights[i] = n_post ? post_mass / static_cast<double>(n_post) : 0.0;
    }
  }
  // normalize the duration block to during_mass
  double dur_sum = 0.0;
  for (std::int64_t d = dur_first; d <= dur_last; ++d)
    dur_sum += weights[static_cast<std::size_t>(d - first)];
  if (dur_sum > 0.0)
    for (std::int64_t d = dur_first; d <= dur_last; ++d)
      weights[static_cast<std::size_t>(d - first)] *= during_mass / dur_sum;

  // cumulative distribution
  double total = 0.0;
  for (double w : weights) total += w;
  double acc = 0.0;
  for (double& w : weights) {
    acc += w / total;
    w = acc;
  }
  return weights;
}

std::int64_t draw_timestamp(Rng& rng, const corpus::DisasterSpec& spec,
                            const std::vector<double>& cumulative) {
  const double u = rng.uniform01();
  std::size_t day = 0;
  while (day + 1 < cumulative.size() && u >= cumulative[day]) ++day;
  const std::int64_t day_num = days_from_civil(spec.window_start) + static_cast<std::int64_t>(day);
  return day_num * 86400 + static_cast<std::int64_t>(rng.below(86400));
}

// --- tweet assembly ----------------------------------------------------------

std::string make_text(Rng& rng, const corpus::DisasterSpec& spec, int need, int label) {
  std::ostringstream out;

  if (rng.uniform01() < 0.12) out << "RT @" << pick(rng, usernames()) << ": ";

  // a 2% sliver of tweets reads like the opposite class; labels stay put
  const int phrasing = rng.uniform01() < 0.02 ? 1 - label : label;
  out << pick(rng, phrasing == 0 ? positive_intros() : negative_intros());
  out << ' ' << pick(rng, agencies());
  out << (phrasing == 0 ? " - " : " but ");
  out << pick(rng, need_phrase(need, phrasing));

  if (rng.uniform01() < 0.5) out << ' ' << disaster_tag(spec);
  if (rng.uniform01() < 0.25) out << " https://t.co/" << base36(rng.next_u64() % 2176782336ull, 6);

  const double punct = rng.uniform01();
  if (punct < 0.25) out << (phrasing == 0 ? "!" : "!!");
  else if (punct < 0.35) out << " ...";

  return out.str();
}

}  // namespace

std::vector<std::string> generator_lexicon() {
  std::vector<std::string> words;
  const auto collect = [&words](const std::vector<std::string>& bank) {
    for (const auto& phrase : bank) {
      std::string token;
      for (char c : phrase + " ") {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!token.empty()) {
          words.push_back(token);
          token.clear();
        }
      }
    }
  };
  collect(positive_intros());
  collect(negative_intros());
  collect(agencies());
  for (int need = 0; need < 4; ++need)
    for (int label : {0, 1}) collect(need_phrase(need, label));
  return words;
}

GenerateSummary generate_corpus(const std::filesystem::path& raw_dir,
                                const std::vector<corpus::DisasterSpec>& registry,
                                std::uint64_t seed) {
  std::filesystem::create_directories(raw_dir);
  GenerateSummary summary;

  for (const corpus::DisasterSpec& spec : registry) {
    const Profile& profile = profile_for(spec.disaster_id);
    Rng rng = Rng(seed).stream("synth/" + spec.disaster_id);
    const auto cumulative = day_weights(spec, profile.pattern);

    const auto path = raw_dir / (spec.disaster_id + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    out << "Date,Tweet,Need,Label\n";

    for (std::size_t row = 0; row < profile.rows; ++row) {
      const int need = pick_categorical(rng, profile.need_share);
      const int label =
          rng.uniform01() < profile.negative_given_need[static_cast<std::size_t>(need)] ? 1 : 0;
      const std::string text = make_text(rng, spec, need, label);

      std::string date;
      if (rng.uniform01() >= 0.003) {  // a sliver of rows lacks a timestamp
        const std::int64_t ts = draw_timestamp(rng, spec, cumulative);
        const std::string iso = format_timestamp(ts);
        // upstream layout: "YYYY-MM-DD HH:MM:SS" without the T/Z markers
        date = iso.substr(0, 10) + " " + iso.substr(11, 8);
      }

      out << date << ',' << csv::escape_always(text) << ','
          << csv::escape(std::string(corpus::need_name(static_cast<corpus::NeedCategory>(need))))
          << ',' << label << '\n';
    }
    summary.rows_per_disaster[spec.disaster_id] = profile.rows;
    summary.total += profile.rows;
  }
  return summary;
}

}  // namespace stormlens::synth
