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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tritag/corpus.hpp"

namespace tritag {

using TagId = std::int32_t;    // base tag from the corpus
using StateId = std::int32_t;  // contextual state: base tag plus cap flag

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename T>
using StringMap = std::unordered_map<std::string, T, StringHash, std::equal_to<>>;

// Interner for base tags; boundary labels never enter it.
class TagIndex {
 public:
  TagId intern(std::string_view label);
  std::optional<TagId> find(std::string_view label) const;
  const std::string& label(TagId id) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
  StringMap<TagId> index_;
};

// Contextual states. Without capitalization every state is (tag, false);
// with it, capitalized and uncapitalized occurrences of a tag are distinct
// states, but only combinations that occur are ever instantiated. The two
// boundary states are fixed at ids 0 and 1 and carry base tag -1.
class StateSpace {
 public:
  static constexpr StateId kBos = 0;
  static constexpr StateId kEos = 1;

  StateSpace();
  StateId intern(TagId base, bool cap);
  std::optional<StateId> find(TagId base, bool cap) const;
  TagId base(StateId s) const { return entries_[s].first; }
  bool cap(StateId s) const { return entries_[s].second; }
  bool is_boundary(StateId s) const { return s < 2; }
  std::size_t size() const { return entries_.size(); }
  std::size_t real_size() const { return entries_.size() - 2; }

 private:
  std::vector<std::pair<TagId, bool>> entries_;
  std::unordered_map<std::int64_t, StateId> index_;
};

struct WordEntry {
  std::int64_t total = 0;
  std::vector<std::pair<TagId, std::int64_t>> tag_counts;  // sorted by tag id

  void add(TagId tag, std::int64_t count);
  std::int64_t count(TagId tag) const;
};

// Raw frequencies from one pass over a corpus. Contextual tables are over
// padded sequences <BOS> <BOS> t1 ... tT <EOS>, so unigram boundary entries
// hold 2 and 1 occurrences per sentence and every window with a boundary is
// counted. Lexical counts and tag_occurrences stay on base tags and real
// tokens only; total_tokens is N and excludes boundaries.
struct NGramCounts {
  TagIndex tags;
  StateSpace states;
  std::vector<std::int64_t> state_unigrams;
  std::unordered_map<std::uint64_t, std::int64_t> bigrams;
  std::unordered_map<std::uint64_t, std::int64_t> trigrams;
  std::vector<std::int64_t> tag_occurrences;
  StringMap<WordEntry> lexicon;
  std::int64_t total_tokens = 0;
  std::int64_t sentence_count = 0;
  bool composite_caps = false;

  static std::uint64_t pack2(StateId a, StateId b);
  static std::uint64_t pack3(StateId a, StateId b, StateId c);
  static std::array<StateId, 3> unpack3(std::uint64_t key);

  std::int64_t unigram(StateId a) const;
  std::int64_t bigram(StateId a, StateId b) const;
  std::int64_t trigram(StateId a, StateId b, StateId c) const;
  const WordEntry* word(std::string_view surface) const;
  std::int64_t word_total(std::string_view surface) const;
  std::int64_t lexical(std::string_view surface, TagId tag) const;
};

// Counts a non-empty corpus. With composite_caps, the contextual state of a
// token is (tag, is_capitalized(surface)); lexical entries ignore the flag.
NGramCounts count(const TaggedCorpus& corpus, bool composite_caps);

// Serialized form of a state: "<BOS>", "<EOS>", the tag label, or the tag
// label with a '+' prefix for capitalized composites.
std::string state_label(const NGramCounts& counts, StateId s);

// Maximum likelihood estimates. A quotient with zero denominator is defined
// as zero. The unigram estimate is f(t)/N for real states and 0 for the
// boundaries, which keeps it a proper distribution over states plus <EOS>.
double mle_unigram(const NGramCounts& c, StateId t);
double mle_bigram(const NGramCounts& c, StateId t2, StateId t3);
double mle_trigram(const NGramCounts& c, StateId t1, StateId t2, StateId t3);
double mle_lexical(const NGramCounts& c, std::string_view surface, TagId tag);

enum class TieBreak {
  kHigherOrder,  // ties go to the trigram, then bigram, then unigram share
  kLowerOrder,
};

struct InterpolationWeights {
  double lambda1 = 0;  // unigram share
  double lambda2 = 0;  // bigram share
  double lambda3 = 0;  // trigram share
};

// Raw integer accumulators behind deleted_interpolation, exposed so tests can
// check them against the trigram table. sums[0] is the unigram accumulator.
std::array<std::int64_t, 3> interpolation_sums(const NGramCounts& c,
                                               TieBreak tie_break);

// Deleted interpolation: each observed trigram votes, with its own frequency
// as weight, for whichever of the three leave-one-out relative frequencies
//   (f(t1,t2,t3)-1)/(f(t1,t2)-1), (f(t2,t3)-1)/(f(t2)-1), (f(t3)-1)/(N-1)
// is largest (zero-denominator expressions count as 0); the totals are then
// normalized. Requires at least one observed trigram.
InterpolationWeights deleted_interpolation(
    const NGramCounts& c, TieBreak tie_break = TieBreak::kHigherOrder);

// Linear interpolation of the three estimates for P(t3 | t1, t2).
double smoothed_trigram(const NGramCounts& c, const InterpolationWeights& w,
                        StateId t1, StateId t2, StateId t3);

}  // namespace tritag
