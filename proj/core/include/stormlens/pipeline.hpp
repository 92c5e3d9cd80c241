// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "stormlens/corpus.hpp"
#include "stormlens/features.hpp"
#include "stormlens/models.hpp"
#include "stormlens/preprocess.hpp"

namespace stormlens::pipeline {

/// Featurization choices threaded through training, evaluation and the CLI.
struct FeatureOptions {
  features::NgramRange ngram;
  std::uint32_t min_df = 1;
  features::VectorizerOptions vectorizer;
};

std::vector<text::TokenizedDoc> tokenize_dataset(const corpus::Dataset& ds,
                                                 const text::StopList& stop);

/// Labels of a fully labeled dataset; throws DataError on unlabeled tweets.
std::vector<int> labels_of(const corpus::Dataset& ds);

models::TrainingSet make_training_set(std::span<const text::TokenizedDoc> docs,
                                      std::span<const int> labels,
                                      const features::Vocabulary& vocab,
                                      const FeatureOptions& opts);

/// Vocabulary + training set from tokenized docs (vocabulary is built on
/// exactly these docs; callers keep train/test separation themselves).
struct Featurized {
  features::Vocabulary vocab;
  models::TrainingSet train;
};
Featurized featurize(std::span<const text::TokenizedDoc> docs, std::span<const int> labels,
                     const FeatureOptions& opts);

}  // namespace stormlens::pipeline
