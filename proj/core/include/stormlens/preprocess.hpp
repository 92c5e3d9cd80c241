// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "stormlens/corpus.hpp"
#include "stormlens/porter.hpp"

namespace stormlens::text {

/// Lowercase stop-word set. The shipped list is a fixed data file so results
/// stay reproducible across environments.
struct StopList {
  std::unordered_set<std::string> words;

  bool contains(const std::string& w) const { return words.count(w) != 0; }

  /// One lowercase word per line; '#' starts a comment.
  static StopList load(const std::filesystem::path& path);
};

/// A tweet reduced to its normalized token sequence.
struct TokenizedDoc {
  std::vector<std::string> tokens;
  std::string source_id;
};

/// Normalizes raw tweet text:
///   - markup tags and common HTML entities removed
///   - weblinks (http://, https://, www.) removed up to the next whitespace
///   - @mentions and a leading "RT" retweet marker removed
///   - accents folded to ASCII, other non-ASCII dropped
///   - lowercased; punctuation replaced by spaces; '#' stripped from hashtags
///   - standalone digit runs dropped; whitespace collapsed
/// Total and idempotent: clean(clean(x)) == clean(x).
std::string clean(std::string_view raw);

/// Whitespace split of already-cleaned text; never yields empty terms.
std::vector<std::string> tokenize(std::string_view cleaned);

/// Order-preserving stop-word filter over lowercase tokens.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopList& stop);

/// Root-form reduction; see porter.hpp.
inline std::string stem(std::string_view token) { return porter_stem(token); }

/// clean -> tokenize -> stop-removal -> stem, plus a final stop filter so
/// that no surviving token (e.g. "likes" -> "like") is a stop-word.
TokenizedDoc preprocess(const corpus::Tweet& tweet, const StopList& stop);

/// Pipeline over raw text when no Tweet envelope exists (tests, tools).
std::vector<std::string> preprocess_text(std::string_view raw, const StopList& stop);

}  // namespace stormlens::text
