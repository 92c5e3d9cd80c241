// SPDX-License-Identifier: Apache-2.0

#include "stormlens/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "stormlens/errors.hpp"

namespace stormlens::text {

StopList StopList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stop list: " + path.string());
  StopList stop;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    stop.words.insert(line.substr(b, e - b + 1));
  }
  return stop;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alnum(char c) { return is_digit(c) || is_lower(c) || is_upper(c); }

// Latin-1 supplement accent folding; anything else non-ASCII becomes a space.
char fold_codepoint(unsigned cp) {
  if (cp >= 0xC0 && cp <= 0xC5) return 'a';
  if (cp == 0xC7) return 'c';
  if (cp >= 0xC8 && cp <= 0xCB) return 'e';
  if (cp >= 0xCC && cp <= 0xCF) return 'i';
  if (cp == 0xD1) return 'n';
  if ((cp >= 0xD2 && cp <= 0xD6) || cp == 0xD8) return 'o';
  if (cp >= 0xD9 && cp <= 0xDC) return 'u';
  if (cp == 0xDD) return 'y';
  if (cp >= 0xE0 && cp <= 0xE5) return 'a';
  if (cp == 0xE7) return 'c';
  if (cp >= 0xE8 && cp <= 0xEB) return 'e';
  if (cp >= 0xEC && cp <= 0xEF) return 'i';
  if (cp == 0xF1) return 'n';
  if ((cp >= 0xF2 && cp <= 0xF6) || cp == 0xF8) return 'o';
  if (cp >= 0xF9 && cp <= 0xFC) return 'u';
  if (cp == 0xFD || cp == 0xFF) return 'y';
  return ' ';
}

// Decodes UTF-8 to ASCII with accents folded; invalid sequences become spaces.
std::string fold_to_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    unsigned cp = 0;
    std::size_t len = 0;
    if ((c & 0xE0) == 0xC0) { cp = c & 0x1Fu; len = 2; }
    else if ((c & 0xF0) == 0xE0) { cp = c & 0x0Fu; len = 3; }
    else if ((c & 0xF8) == 0xF0) { cp = c & 0x07u; len = 4; }
    else { out.push_back(' '); ++i; continue; }
    if (i + len > s.size()) { out.push_back(' '); ++i; continue; }
    bool ok = true;
    for (std::size_t t = 1; t < len; ++t) {
      const auto cc = static_cast<unsigned char>(s[i + t]);
      if ((cc & 0xC0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (cc & 0x3Fu);
    }
    if (!ok) { out.push_back(' '); ++i; continue; }
    out.push_back(fold_codepoint(cp));
    i += len;
  }
  return out;
}

void strip_markup(std::string& s) {
  // <...> tags
  std::string out;
  out.reserve(s.size());
  bool in_tag = false;
  for (char c : s) {
    if (c == '<') { in_tag = true; continue; }
    if (in_tag) {
      if (c == '>') in_tag = false;
      continue;
    }
    out.push_back(c);
  }
  s = std::move(out);

  static constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kEntities{{
      {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"},
      {"&nbsp;", " "},
  }};
  for (const auto& [entity, repl] : kEntities) {
    std::size_t pos = 0;
    while ((pos = s.find(entity, pos)) != std::string::npos) {
      s.replace(pos, entity.size(), repl);
      pos += repl.size();
    }
  }
}

bool starts_with_at(std::string_view s, std::size_t i, std::string_view prefix) {
  return s.size() - i >= prefix.size() && s.compare(i, prefix.size(), prefix) == 0;
}

// URLs and @mentions removed up to the next whitespace / end of handle.
std::string strip_links_and_mentions(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !is_alnum(s[i - 1]);
    if (boundary && (starts_with_at(s, i, "http://") || starts_with_at(s, i, "https://") ||
                     starts_with_at(s, i, "www."))) {
      while (i < s.size() && !is_space(s[i])) ++i;
      out.push_back(' ');
      continue;
    }
    if (s[i] == '@') {
      std::size_t t = i + 1;
      while (t < s.size() && (is_alnum(s[t]) || s[t] == '_')) ++t;
      if (t > i + 1) {
        i = t;
        out.push_back(' ');
        continue;
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

// The retweet marker is the uppercase token "RT" at the very start. Mid-text
// occurrences are ordinary tokens (they get lowercased and stop-listed
// later), and the case-sensitivity keeps clean() idempotent.
void strip_leading_retweet(std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  if (i + 2 <= s.size() && s[i] == 'R' && s[i + 1] == 'T' &&
      (i + 2 == s.size() || !is_alnum(s[i + 2])))
    s.erase(i, 2);
}

}  // namespace

std::string clean(std::string_view raw) {
  std::string s(raw);
  strip_markup(s);
  s = strip_links_and_mentions(s);
  strip_leading_retweet(s);
  s = fold_to_ascii(s);

  // lowercase; punctuation -> space
  for (char& c : s) {
    if (is_upper(c))
      c = static_cast<char>(c - 'A' + 'a');
    else if (!is_lower(c) && !is_digit(c))
      c = ' ';
  }

  // collapse whitespace and drop standalone digit runs
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    std::size_t e = i;
    bool all_digits = true;
    while (e < s.size() && s[e] != ' ') {
      all_digits = all_digits && is_digit(s[e]);
      ++e;
    }
    if (!all_digits) {
      if (!out.empty()) out.push_back(' ');
      out.append(s, i, e - i);
    }
    i = e;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && is_space(cleaned[i])) ++i;
    std::size_t e = i;
    while (e < cleaned.size() && !is_space(cleaned[e])) ++e;
    if (e > i) tokens.emplace_back(cleaned.substr(i, e - i));
    i = e;
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const StopList& stop) {
  std::erase_if(tokens, [&](const std::string& t) { return stop.contains(t); });
  return tokens;
}

std::vector<std::string> preprocess_text(std::string_view raw, const StopList& stop) {
  std::vector<std::string> tokens = remove_stopwords(tokenize(clean(raw)), stop);
  for (std::string& t : tokens) t = stem(t);
  // A stem can itself be a stop-word ("likes" -> "like"); filter once more so
  // the output never contains one.
  return remove_stopwords(std::move(tokens), stop);
}

TokenizedDoc preprocess(const corpus::Tweet& tweet, const StopList& stop) {
  return TokenizedDoc{preprocess_text(tweet.text, stop), tweet.id};
}

}  // namespace stormlens::text
