// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stormlens/corpus.hpp"

namespace stormlens::synth {

/// Writes the nine disaster corpora in the upstream file layout
/// (`Date,Tweet,Need,Label`, one CSV per disaster) into `raw_dir`.
///
/// The generator is deterministic in the seed and calibrated against the
/// source dataset's published statistics: per-disaster tweet counts (41,993
/// in total, 23,237 across the five disaster-type corpora), need-category
/// mixes, the negative-sentiment majority in every corpus, and the
/// inside/outside-duration posting patterns.
struct GenerateSummary {
  std::map<std::string, std::size_t> rows_per_disaster;
  std::size_t total = 0;
};

GenerateSummary generate_corpus(const std::filesystem::path& raw_dir,
                                const std::vector<corpus::DisasterSpec>& registry,
                                std::uint64_t seed);

/// Phrase vocabulary used by the generator; exposed so tests can check that
/// every sentiment-bearing word keeps a stable root form.
std::vector<std::string> generator_lexicon();

}  // namespace stormlens::synth
