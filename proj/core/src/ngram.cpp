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

#include "tritag/ngram.hpp"

#include <algorithm>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

// State ids are packed three to a 64-bit key.
constexpr StateId kMaxStates = StateId{1} << 21;

inline double safe_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TagId TagIndex::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  TagId id = static_cast<TagId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<TagId> TagIndex::find(std::string_view label) const {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::string& TagIndex::label(TagId id) const { return labels_[id]; }

StateSpace::StateSpace() {
  entries_.emplace_back(-1, false);  // <BOS>
  entries_.emplace_back(-1, false);  // <EOS>
}

StateId StateSpace::intern(TagId base, bool cap) {
  std::int64_t key = static_cast<std::int64_t>(base) * 2 + (cap ? 1 : 0);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (entries_.size() >= static_cast<std::size_t>(kMaxStates)) {
    throw TrainError("contextual state space exceeds the packing limit");
  }
  StateId id = static_cast<StateId>(entries_.size());
  entries_.emplace_back(base, cap);
  index_.emplace(key, id);
  return id;
}

std::optional<StateId> StateSpace::find(TagId base, bool cap) const {
  std::int64_t key = static_cast<std::int64_t>(base) * 2 + (cap ? 1 : 0);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  return std::nullopt;
}

void WordEntry::add(TagId tag, std::int64_t count) {
  total += count;
  auto it = std::lower_bound(
      tag_counts.begin(), tag_counts.end(), tag,
      [](const auto& entry, TagId t) { return entry.first < t; });
  if (it != tag_counts.end() && it->first == tag) {
    it->second += count;
  } else {
    tag_counts.insert(it, {tag, count});
  }
}

std::int64_t WordEntry::count(TagId tag) const {
  auto it = std::lower_bound(
      tag_counts.begin(), tag_counts.end(), tag,
      [](const auto& entry, TagId t) { return entry.first < t; });
  if (it != tag_counts.end() && it->first == tag) return it->second;
  return 0;
}

std::uint64_t NGramCounts::pack2(StateId a, StateId b) {
  return (static_cast<std::uint64_t>(a) << 21) | static_cast<std::uint64_t>(b);
}

std::uint64_t NGramCounts::pack3(StateId a, StateId b, StateId c) {
  return (static_cast<std::uint64_t>(a) << 42) |
         (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(c);
}

std::array<StateId, 3> NGramCounts::unpack3(std::uint64_t key) {
  constexpr std::uint64_t mask = (std::uint64_t{1} << 21) - 1;
  return {static_cast<StateId>(key >> 42),
          static_cast<StateId>((key >> 21) & mask),
          static_cast<StateId>(key & mask)};
}

std::int64_t NGramCounts::unigram(StateId a) const {
  return state_unigrams[static_cast<std::size_t>(a)];
}

std::int64_t NGramCounts::bigram(StateId a, StateId b) const {
  auto it = bigrams.find(pack2(a, b));
  return it == bigrams.end() ? 0 : it->second;
}

std::int64_t NGramCounts::trigram(StateId a, StateId b, StateId c) const {
  auto it = trigrams.find(pack3(a, b, c));
  return it == trigrams.end() ? 0 : it->second;
}

const WordEntry* NGramCounts::word(std::string_view surface) const {
  auto it = lexicon.find(surface);
  return it == lexicon.end() ? nullptr : &it->second;
}

std::int64_t NGramCounts::word_total(std::string_view surface) const {
  const WordEntry* entry = word(surface);
  return entry ? entry->total : 0;
}

std::int64_t NGramCounts::lexical(std::string_view surface, TagId tag) const {
  const WordEntry* entry = word(surface);
  return entry ? entry->count(tag) : 0;
}

NGramCounts count(const TaggedCorpus& corpus, bool composite_caps) {
  if (corpus.sentences.empty()) {
    throw TrainError("cannot count an empty corpus");
  }
  NGramCounts c;
  c.composite_caps = composite_caps;
  c.state_unigrams.assign(2, 0);
  std::vector<StateId> seq;
  for (const Sentence& sentence : corpus.sentences) {
    seq.clear();
    seq.push_back(StateSpace::kBos);
    seq.push_back(StateSpace::kBos);
    for (const Token& token : sentence.tokens) {
      TagId tag = c.tags.intern(token.tag);
      bool cap = composite_caps && is_capitalized(token.surface);
      StateId state = c.states.intern(tag, cap);
      if (c.state_unigrams.size() < c.states.size()) {
        c.state_unigrams.resize(c.states.size(), 0);
      }
      if (c.tag_occurrences.size() < c.tags.size()) {
        c.tag_occurrences.resize(c.tags.size(), 0);
      }
      seq.push_back(state);
      c.tag_occurrences[static_cast<std::size_t>(tag)] += 1;
      auto [it, inserted] = c.lexicon.try_emplace(token.surface);
      it->second.add(tag, 1);
    }
    seq.push_back(StateSpace::kEos);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      c.state_unigrams[static_cast<std::size_t>(seq[i])] += 1;
      if (i + 1 < seq.size()) {
        c.bigrams[NGramCounts::pack2(seq[i], seq[i + 1])] += 1;
      }
      if (i + 2 < seq.size()) {
        c.trigrams[NGramCounts::pack3(seq[i], seq[i + 1], seq[i + 2])] += 1;
      }
    }
    c.total_tokens += static_cast<std::int64_t>(sentence.tokens.size());
    c.sentence_count += 1;
  }
  return c;
}

std::string state_label(const NGramCounts& counts, StateId s) {
  if (s == StateSpace::kBos) return std::string(kBosLabel);
  if (s == StateSpace::kEos) return std::string(kEosLabel);
  const std::string& base = counts.tags.label(counts.states.base(s));
  if (counts.states.cap(s)) return "+" + base;
  return base;
}

double mle_unigram(const NGramCounts& c, StateId t) {
  if (c.states.is_boundary(t)) return 0.0;
  return safe_ratio(c.unigram(t), c.total_tokens);
}

double mle_bigram(const NGramCounts& c, StateId t2, StateId t3) {
  std::int64_t num = c.bigram(t2, t3);
  if (num == 0) return 0.0;
  return safe_ratio(num, c.unigram(t2));
}

double mle_trigram(const NGramCounts& c, StateId t1, StateId t2, StateId t3) {
  std::int64_t num = c.trigram(t1, t2, t3);
  if (num == 0) return 0.0;
  return safe_ratio(num, c.bigram(t1, t2));
}

double mle_lexical(const NGramCounts& c, std::string_view surface, TagId tag) {
  std::int64_t num = c.lexical(surface, tag);
  if (num == 0) return 0.0;
  return safe_ratio(num, c.tag_occurrences[static_cast<std::size_t>(tag)]);
}

std::array<std::int64_t, 3> interpolation_sums(const NGramCounts& c,
                                               TieBreak tie_break) {
  if (c.trigrams.empty()) {
    throw TrainError("deleted interpolation requires at least one trigram");
  }
  std::array<std::int64_t, 3> sums = {0, 0, 0};
  for (const auto& [key, f] : c.trigrams) {
    auto [t1, t2, t3] = NGramCounts::unpack3(key);
    double r3 = safe_ratio(f - 1, c.bigram(t1, t2) - 1);
    double r2 = safe_ratio(c.bigram(t2, t3) - 1, c.unigram(t2) - 1);
    double r1 = safe_ratio(c.unigram(t3) - 1, c.total_tokens - 1);
    int winner;
    if (tie_break == TieBreak::kHigherOrder) {
      if (r3 >= r2 && r3 >= r1) {
        winner = 2;
      } else if (r2 >= r1) {
        winner = 1;
      } else {
        winner = 0;
      }
    } else {
      if (r1 >= r2 && r1 >= r3) {
        winner = 0;
      } else if (r2 >= r3) {
        winner = 1;
      } else {
        winner = 2;
      }
    }
    sums[static_cast<std::size_t>(winner)] += f;
  }
  return sums;
}

InterpolationWeights deleted_interpolation(const NGramCounts& c,
                                           TieBreak tie_break) {
  std::array<std::int64_t, 3> sums = interpolation_sums(c, tie_break);
  double total = static_cast<double>(sums[0] + sums[1] + sums[2]);
  InterpolationWeights w;
  w.lambda1 = static_cast<double>(sums[0]) / total;
  w.lambda2 = static_cast<double>(sums[1]) / total;
  w.lambda3 = static_cast<double>(sums[2]) / total;
  return w;
}

double smoothed_trigram(const NGramCounts& c, const InterpolationWeights& w,
                        StateId t1, StateId t2, StateId t3) {
  return w.lambda1 * mle_unigram(c, t3) + w.lambda2 * mle_bigram(c, t2, t3) +
         w.lambda3 * mle_trigram(c, t1, t2, t3);
}

}  // namespace tritag
