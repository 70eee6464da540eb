// Copyright 2026 The tritag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tritag/corpus.hpp"
#include "tritag/tagger.hpp"

namespace tritag {

// Token-level tagging results on one test set, split by whether the surface
// form was in the training lexicon. Empty slices score 1 by convention.
struct ScoreReport {
  std::int64_t total = 0;
  std::int64_t correct = 0;
  std::int64_t known = 0;
  std::int64_t known_correct = 0;
  std::int64_t unknown = 0;
  std::int64_t unknown_correct = 0;

  double accuracy() const;
  double known_accuracy() const;
  double unknown_accuracy() const;
  double unknown_share() const;  // fraction of test tokens outside the lexicon
};

// Decodes every test sentence and compares against the reference tags.
// beam_theta follows the decode convention: negative means the model default.
ScoreReport score(const TaggerModel& model, const TaggedCorpus& test,
                  double beam_theta = -1.0);

struct CrossValReport {
  std::vector<ScoreReport> folds;

  ScoreReport pooled() const;  // token-weighted sum over folds
  double mean_accuracy() const;
  double stddev_accuracy() const;  // sample standard deviation (n-1)
  double mean_known_accuracy() const;
  double mean_unknown_accuracy() const;
};

// k-fold cross-validation over contiguous sentence blocks: fold i tests on
// the i-th block of a model trained on everything else. Folds run in
// parallel; results are deterministic regardless of scheduling.
CrossValReport cross_validate(const TaggedCorpus& corpus,
                              const TaggerConfig& config, std::size_t folds,
                              double beam_theta = -1.0);

// Accuracy as a function of training size, averaged over seeded resamples of
// disjoint train/test splits.
struct LearningPoint {
  std::int64_t requested_tokens = 0;
  double mean_train_tokens = 0;  // actual sampled size, whole sentences
  double mean_accuracy = 0;
  double stddev_accuracy = 0;
  double mean_known_accuracy = 0;
  double mean_unknown_accuracy = 0;
  double mean_unknown_share = 0;
};

std::vector<LearningPoint> learning_curve(const TaggedCorpus& corpus,
                                          const TaggerConfig& config,
                                          std::span<const std::int64_t> sizes,
                                          std::size_t repeats,
                                          std::int64_t test_tokens,
                                          std::uint64_t seed,
                                          double beam_theta = -1.0);

// One (quotient, hit) observation per test token, produced by exact decoding
// followed by the confidence pass.
struct TokenConfidence {
  Quotient quotient;
  bool correct = false;
};

std::vector<TokenConfidence> collect_confidence(const TaggerModel& model,
                                                const TaggedCorpus& test);

// The same observations pooled over a k-fold cross-validation.
std::vector<TokenConfidence> collect_confidence_folds(
    const TaggedCorpus& corpus, const TaggerConfig& config, std::size_t folds);

// Accuracy split at a confidence threshold: tokens whose quotient exceeds it
// against the rest.
struct ReliabilityPoint {
  double threshold = 0;
  std::int64_t reliable = 0;
  std::int64_t reliable_correct = 0;
  std::int64_t rest = 0;
  std::int64_t rest_correct = 0;

  double reliable_share() const;
  double reliable_accuracy() const;
  double rest_accuracy() const;
};

std::vector<ReliabilityPoint> reliability_curve(
    std::span<const TokenConfidence> observations,
    std::span<const double> thresholds);

// Fixed-width text renderings used by the command line tools. Metrics print
// with six decimals; layouts are stable for scripting.
std::string format_score(const ScoreReport& report);
std::string format_cross_val(const CrossValReport& report);
std::string format_learning(std::span<const LearningPoint> points);
std::string format_reliability(std::span<const ReliabilityPoint> points);

}  // namespace tritag
