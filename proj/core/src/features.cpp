// SPDX-License-Identifier: Apache-2.0

#include "stormlens/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stormlens/errors.hpp"
#include "stormlens/rng.hpp"

namespace stormlens::features {

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [idx, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

double SparseVector::dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, NgramRange range) {
  if (range.lo < 1 || range.hi < range.lo)
    throw ConfigError("invalid n-gram range (" + std::to_string(range.lo) + "," +
                      std::to_string(range.hi) + ")");
  std::vector<std::string> out;
  for (int n = range.lo; n <= range.hi; ++n) {
    if (tokens.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t t = 1; t < static_cast<std::size_t>(n); ++t) {
        gram.push_back(' ');
        gram += tokens[i + t];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

Vocabulary build_vocabulary(std::span<const text::TokenizedDoc> docs, NgramRange range,
                            std::uint32_t min_df) {
  if (docs.empty()) throw DataError("cannot build a vocabulary from zero documents");
  if (min_df < 1) throw ConfigError("min_df must be at least 1");

  // std::map keeps terms in lexicographic order, which fixes index assignment.
  std::map<std::string, std::uint32_t> df;
  std::vector<std::string> grams;
  for (const auto& doc : docs) {
    grams = extract_ngrams(doc.tokens, range);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[g];
  }

  Vocabulary vocab;
  vocab.n_docs = docs.size();
  vocab.ngram = range;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    vocab.index.emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(term);
    vocab.doc_freq.push_back(count);
  }
  if (vocab.terms.empty())
    throw DataError("vocabulary is empty after min_df=" + std::to_string(min_df) + " filtering");
  return vocab;
}

int term_frequency(const text::TokenizedDoc& doc, std::string_view term) {
  const int n = 1 + static_cast<int>(std::count(term.begin(), term.end(), ' '));
  const auto grams = extract_ngrams(doc.tokens, NgramRange{n, n});
  return static_cast<int>(std::count(grams.begin(), grams.end(), term));
}

double idf_value(std::uint64_t n_docs, std::uint64_t df, IdfVariant variant) {
  switch (variant) {
    case IdfVariant::paper:
      return std::log(static_cast<double>(n_docs) / (1.0 + static_cast<double>(df)));
    case IdfVariant::smooth:
      return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
  }
  return 0.0;
}

double inverse_document_frequency(const Vocabulary& vocab, const std::string& term,
                                  IdfVariant variant) {
  const auto it = vocab.index.find(term);
  if (it == vocab.index.end()) throw DataError("unknown vocabulary term: " + term);
  return idf_value(vocab.n_docs, vocab.doc_freq[it->second], variant);
}

SparseVector vectorize(const text::TokenizedDoc& doc, const Vocabulary& vocab,
                       const VectorizerOptions& opts) {
  // counts per vocabulary index
  std::unordered_map<std::uint32_t, int> counts;
  for (const auto& gram : extract_ngrams(doc.tokens, vocab.ngram)) {
    const auto it = vocab.index.find(gram);
    if (it != vocab.index.end()) ++counts[it->second];
  }

  SparseVector vec;
  vec.entries.reserve(counts.size());
  for (const auto& [idx, count] : counts) {
    const double tf = opts.sublinear_tf ? 1.0 + std::log(static_cast<double>(count))
                                        : static_cast<double>(count);
    const double w = tf * idf_value(vocab.n_docs, vocab.doc_freq[idx], opts.idf);
    if (w != 0.0) vec.entries.emplace_back(idx, w);
  }
  std::sort(vec.entries.begin(), vec.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  if (opts.l2_normalize) {
    const double n = vec.norm();
    if (n > 0.0)
      for (auto& [idx, w] : vec.entries) w /= n;
  }
  return vec;
}

std::uint64_t Vocabulary::fingerprint() const {
  std::uint64_t h = fnv1a64("vocab");
  std::ostringstream head;
  head << n_docs << '|' << ngram.lo << ',' << ngram.hi;
  h = fnv1a64(head.str(), h);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    h = fnv1a64(terms[i], h);
    h = fnv1a64(std::to_string(doc_freq[i]), h);
  }
  return h;
}

void Vocabulary::save_tsv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vocabulary file: " + path.string());
  out << "#n_docs=" << n_docs << "\tngram=" << ngram.lo << ',' << ngram.hi << '\n';
  for (std::size_t i = 0; i < terms.size(); ++i)
    out << terms[i] << '\t' << i << '\t' << doc_freq[i] << '\n';
}

Vocabulary Vocabulary::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vocabulary file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("#n_docs=", 0) != 0)
    throw DataError("malformed vocabulary header in " + path.string());

  Vocabulary vocab;
  {
    std::istringstream head(line.substr(1));
    std::string field;
    while (std::getline(head, field, '\t')) {
      if (field.rfind("n_docs=", 0) == 0) vocab.n_docs = std::stoull(field.substr(7));
      if (field.rfind("ngram=", 0) == 0)
        std::sscanf(field.c_str(), "ngram=%d,%d", &vocab.ngram.lo, &vocab.ngram.hi);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string term, idx_s, df_s;
    if (!std::getline(row, term, '\t') || !std::getline(row, idx_s, '\t') ||
        !std::getline(row, df_s, '\t'))
      throw DataError("malformed vocabulary row in " + path.string() + ": " + line);
    const auto idx = static_cast<std::uint32_t>(std::stoul(idx_s));
    if (idx != vocab.terms.size())
      throw DataError("non-dense vocabulary index in " + path.string() + ": " + line);
    vocab.index.emplace(term, idx);
    vocab.terms.push_back(term);
    vocab.doc_freq.push_back(static_cast<std::uint32_t>(std::stoul(df_s)));
  }
  if (vocab.terms.empty()) throw DataError("vocabulary file has no terms: " + path.string());
  return vocab;
}

}  // namespace stormlens::features
