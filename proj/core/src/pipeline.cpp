// SPDX-License-Identifier: Apache-2.0

#include "stormlens/pipeline.hpp"

#include "stormlens/errors.hpp"

namespace stormlens::pipeline {

std::vector<text::TokenizedDoc> tokenize_dataset(const corpus::Dataset& ds,
                                                 const text::StopList& stop) {
  std::vector<text::TokenizedDoc> docs;
  docs.reserve(ds.tweets.size());
  for (const auto& tweet : ds.tweets) docs.push_back(text::preprocess(tweet, stop));
  return docs;
}

std::vector<int> labels_of(const corpus::Dataset& ds) {
  std::vector<int> labels;
  labels.reserve(ds.tweets.size());
  for (const auto& tweet : ds.tweets) {
    if (!tweet.label)
      throw DataError(ds.spec.disaster_id + ": unlabeled tweet " + tweet.id +
                      " in a labeled-data operation");
    labels.push_back(*tweet.label);
  }
  return labels;
}

models::TrainingSet make_training_set(std::span<const text::TokenizedDoc> docs,
                                      std::span<const int> labels,
                                      const features::Vocabulary& vocab,
                                      const FeatureOptions& opts) {
  models::TrainingSet ts;
  ts.feature_dim = static_cast<std::uint32_t>(vocab.size());
  ts.x.reserve(docs.size());
  for (const auto& doc : docs) ts.x.push_back(features::vectorize(doc, vocab, opts.vectorizer));
  ts.y.assign(labels.begin(), labels.end());
  return ts;
}

Featurized featurize(std::span<const text::TokenizedDoc> docs, std::span<const int> labels,
                     const FeatureOptions& opts) {
  Featurized out;
  out.vocab = features::build_vocabulary(docs, opts.ngram, opts.min_df);
  out.train = make_training_set(docs, labels, out.vocab, opts);
  return out;
}

}  // namespace stormlens::pipeline
