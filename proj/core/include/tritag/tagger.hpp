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
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tritag/corpus.hpp"
#include "tritag/ngram.hpp"
#include "tritag/suffix.hpp"

namespace tritag {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct TaggerConfig {
  double beam_theta = 1000.0;  // 0 disables pruning
  int max_suffix = 10;
  std::int64_t suffix_freq_threshold = 10;
  int unknown_cap = 10;  // best-scored candidates kept per unknown word; 0 = all
  TieBreak tie_break = TieBreak::kHigherOrder;
  ThetaMode theta_mode = ThetaMode::kPrinted;
  bool capitalization = true;
};

// One lexical hypothesis for a word: the base tag and its emission weight
// (a lexicon relative frequency for known words, a suffix score otherwise).
struct Candidate {
  TagId tag = 0;
  double score = 0;
};

// Confidence of one tagging decision: the probability ratio between the best
// sequence and the best sequence forced through the strongest alternative
// tag at this position. Infinite when no alternative has positive
// probability (in particular for single-candidate words).
struct Quotient {
  double log_ratio = 0;
  bool infinite = false;

  double value() const;
  // An assignment is reliable when its quotient exceeds the threshold;
  // infinite quotients count as reliable at every threshold, finite ones
  // never reach an infinite threshold.
  bool reliable(double threshold) const;
};

struct TaggedSentence {
  std::vector<std::string> tags;
  std::vector<bool> known;
  std::vector<Quotient> quotients;  // filled by reliability()
  double log_prob = 0;
};

class TaggerModel {
 public:
  // Trains on a non-empty corpus: counts (with composite capitalization
  // states when configured), derives interpolation weights, and builds the
  // suffix guesser.
  static TaggerModel assemble(const TaggedCorpus& corpus,
                              const TaggerConfig& config);

  static TaggerModel from_parts(NGramCounts counts, InterpolationWeights w,
                                SuffixModel suffix, TaggerConfig config);

  // Lexical hypotheses for one word, sorted by tag label. Known words get
  // exactly their lexicon tags; unknown words get suffix-scored tags, capped
  // at config.unknown_cap best when the cap is on.
  std::vector<Candidate> candidates(std::string_view word) const;

  bool known_word(std::string_view word) const;

  // Best tag sequence under the trigram model, searched over pair states in
  // log space with optional beam pruning (beam_theta 0 disables it, values
  // above 1 enable it; any negative value means "use the configured default").
  TaggedSentence decode(std::span<const std::string> words,
                        double beam_theta = -1.0) const;

  // Per-token confidence quotients for `tags` (normally the decode output),
  // computed exactly on the unpruned lattice via max-product forward and
  // backward passes.
  std::vector<Quotient> reliability(std::span<const std::string> words,
                                    std::span<const std::string> tags) const;

  const NGramCounts& counts() const { return counts_; }
  const InterpolationWeights& weights() const { return weights_; }
  const SuffixModel& suffix_model() const { return suffix_; }
  const TaggerConfig& config() const { return config_; }

  // Lattice introspection for property tests: per position, the candidate
  // list and the surviving pair states (prev candidate index at i-1, own
  // candidate index, accumulated log score).
  struct LatticeState {
    std::int32_t prev;
    std::int32_t cand;
    double log_delta;
    std::int32_t backptr;
  };
  struct LatticePosition {
    std::vector<Candidate> cands;
    std::vector<double> log_emission;
    std::vector<StateId> cand_states;  // -1 when the composite never occurred
    std::vector<LatticeState> states;
    bool word_known = false;
  };
  struct Lattice {
    std::vector<LatticePosition> positions;
  };
  Lattice build_lattice(std::span<const std::string> words,
                        double beam_theta) const;

  // Rank of a base tag in label order; decode ties are broken by comparing
  // full tag sequences under this order.
  std::int32_t label_rank(TagId tag) const { return label_rank_[tag]; }

 private:
  TaggerModel() = default;
  void finalize();

  double log_transition(StateId z, StateId a, StateId b) const;
  double log_sentence_end(StateId b) const;

  NGramCounts counts_;
  InterpolationWeights weights_;
  SuffixModel suffix_;
  TaggerConfig config_;
  std::vector<double> unigram_mle_;     // by state id
  std::vector<std::int32_t> label_rank_;  // by base tag id
};

}  // namespace tritag
