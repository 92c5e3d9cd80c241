// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stormlens/preprocess.hpp"

namespace stormlens::features {

/// Sparse feature vector: (index, weight) entries strictly increasing by
/// index, no duplicates, no stored zeros.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t nnz() const { return entries.size(); }
  double norm() const;

  /// Dot product by sorted merge; accumulation order is index-ascending, so
  /// results are bit-identical regardless of caller.
  static double dot(const SparseVector& a, const SparseVector& b);
};

struct NgramRange {
  int lo = 1;
  int hi = 1;

  bool operator==(const NgramRange&) const = default;
};

/// Term index with document frequencies. Indices are assigned by
/// lexicographic term order, which makes vocabulary construction
/// byte-identical across runs.
struct Vocabulary {
  std::vector<std::string> terms;                        // sorted; position == index
  std::unordered_map<std::string, std::uint32_t> index;  // term -> dense index
  std::vector<std::uint32_t> doc_freq;                   // per-term df
  std::uint64_t n_docs = 0;
  NgramRange ngram;

  std::size_t size() const { return terms.size(); }
  bool contains(const std::string& term) const { return index.count(term) != 0; }

  /// Content hash over the exported form; models record it and refuse to
  /// score against a different vocabulary.
  std::uint64_t fingerprint() const;

  /// TSV export: one header line `#n_docs=<n> ngram=<lo>,<hi>` then
  /// `term<TAB>index<TAB>doc_freq` rows sorted by index.
  void save_tsv(const std::filesystem::path& path) const;
  static Vocabulary load_tsv(const std::filesystem::path& path);
};

enum class IdfVariant {
  paper,   // ln(n_docs / (1 + df)) -- may be negative for ubiquitous terms
  smooth,  // ln((1 + n_docs) / (1 + df)) + 1 -- strictly positive
};

struct VectorizerOptions {
  IdfVariant idf = IdfVariant::paper;
  bool sublinear_tf = false;  // 1 + ln(tf) instead of the raw count
  bool l2_normalize = false;
};

/// All contiguous n-grams for n in [lo, hi], joined by single spaces,
/// left-to-right within each n, n ascending.
std::vector<std::string> extract_ngrams(std::span<const std::string> tokens, NgramRange range);

/// Builds the term index over all n-grams with document frequency >= min_df.
Vocabulary build_vocabulary(std::span<const text::TokenizedDoc> docs, NgramRange range,
                            std::uint32_t min_df = 1);

/// Raw occurrence count of `term` among the document's n-grams; the n-gram
/// size is inferred from the term itself.
int term_frequency(const text::TokenizedDoc& doc, std::string_view term);

double idf_value(std::uint64_t n_docs, std::uint64_t df, IdfVariant variant);

/// Eq.-faithful idf of a known vocabulary term; throws on unknown terms.
double inverse_document_frequency(const Vocabulary& vocab, const std::string& term,
                                  IdfVariant variant = IdfVariant::paper);

/// tf-idf vector of one document. Out-of-vocabulary terms are dropped;
/// zero-weight entries are not stored.
SparseVector vectorize(const text::TokenizedDoc& doc, const Vocabulary& vocab,
                       const VectorizerOptions& opts = {});

}  // namespace stormlens::features
