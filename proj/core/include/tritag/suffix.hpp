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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tritag/ngram.hpp"

namespace tritag {

enum class ThetaMode {
  kPrinted,  // mean squared deviation of the tag probabilities
  kSqrt,     // its square root (standard deviation)
};

// Smoothing weight for the suffix recursion, computed from an unconditioned
// tag distribution: (1/(s-1)) * sum((P(t_j) - mean)^2) over the s tags, or
// its square root in sqrt mode. Requires s >= 2.
double suffix_theta(std::span<const double> tag_distribution, ThetaMode mode);

// Character-level trie over reversed word endings. Node 0 is the root (the
// empty suffix); each node stores the total frequency of words reaching it
// and per-tag frequencies. Children are kept ordered so traversal order is
// deterministic.
class SuffixTrie {
 public:
  struct Node {
    std::map<char32_t, std::int32_t> children;
    std::int64_t total = 0;
    std::vector<std::pair<TagId, std::int64_t>> tag_counts;  // sorted by tag
  };

  SuffixTrie() : nodes_(1) {}

  // Adds `count` observations of `tag` to the nodes for every suffix of
  // `word` up to max_length characters (including the empty suffix).
  void add(const std::u32string& word, int max_length, TagId tag,
           std::int64_t count);

  // Adds `count` observations of `tag` to exactly the node for `suffix`
  // (given in reading order), creating any missing nodes on the path with
  // zero counts of their own. Used when deserializing a saved trie.
  void insert_suffix(const std::u32string& suffix, TagId tag,
                     std::int64_t count);

  // Nodes along the longest stored suffix of `word`, root first. The root is
  // always present, so the result has 1 + m entries for a match of length m.
  std::vector<const Node*> match_path(const std::u32string& word,
                                      int max_length) const;

  const Node& root() const { return nodes_[0]; }
  std::size_t node_count() const { return nodes_.size(); }

  // Depth-first visit of every node with its (unreversed) suffix string.
  void visit(const std::function<void(const std::string& suffix,
                                      const Node& node)>& fn) const;

 private:
  std::vector<Node> nodes_;
};

// Tag guesser for out-of-lexicon words: successive abstraction over word
// endings, one trie for capitalized words and one for the rest. A word's tag
// distribution starts from the unconditioned corpus distribution and is
// refined through the matched suffix lengths 1..m with
//   P(t | suffix_len) = (relative frequency + theta * P(t | suffix_len-1))
//                       / (1 + theta).
class SuffixModel {
 public:
  // Builds from lexical counts: every (word, tag) entry whose word total is
  // at most max_word_freq contributes with its full count; suffixes are
  // capped at max_length characters. Raises if nothing passes the threshold
  // or the tagset has fewer than two tags.
  static SuffixModel build(const NGramCounts& counts, int max_length,
                           std::int64_t max_word_freq, ThetaMode mode);

  // P(tag | longest stored suffix of word), indexed by TagId. Falls back to
  // the unconditioned distribution when not even the last character matches.
  std::vector<double> tag_distribution(std::string_view word) const;

  // Emission weight for decoding: P(t | suffix) / P(t), the Bayesian
  // inversion of the suffix distribution with the constant P(suffix)
  // dropped. Zero for tags absent from the training corpus.
  double emission_score(std::string_view word, TagId tag) const;

  // The recursion evaluated at an explicit node path of a chosen trie;
  // exposed for invariant checks and shared by tag_distribution.
  std::vector<double> distribution_at(
      std::span<const SuffixTrie::Node* const> path) const;

  double theta() const { return theta_; }
  const std::vector<double>& root_distribution() const {
    return root_distribution_;
  }
  const SuffixTrie& lower() const { return lower_; }
  const SuffixTrie& upper() const { return upper_; }
  int max_length() const { return max_length_; }
  std::int64_t max_word_freq() const { return max_word_freq_; }

  // Assembles a model from deserialized parts.
  static SuffixModel from_parts(SuffixTrie lower, SuffixTrie upper,
                                std::vector<double> root_distribution,
                                double theta, int max_length,
                                std::int64_t max_word_freq);

 private:
  SuffixModel() = default;
  friend class TaggerModel;  // holds one as a member before assembly fills it

  SuffixTrie lower_;
  SuffixTrie upper_;
  std::vector<double> root_distribution_;
  double theta_ = 0;
  int max_length_ = 10;
  std::int64_t max_word_freq_ = 10;
};

}  // namespace tritag
