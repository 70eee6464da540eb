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

#include "tritag/suffix.hpp"

#include <algorithm>
#include <cmath>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

void add_tag_count(std::vector<std::pair<TagId, std::int64_t>>& counts,
                   TagId tag, std::int64_t count) {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), tag,
      [](const auto& entry, TagId t) { return entry.first < t; });
  if (it != counts.end() && it->first == tag) {
    it->second += count;
  } else {
    counts.insert(it, {tag, count});
  }
}

}  // namespace

double suffix_theta(std::span<const double> tag_distribution, ThetaMode mode) {
  std::size_t s = tag_distribution.size();
  if (s < 2) {
    throw TrainError("suffix theta needs a distribution over at least 2 tags");
  }
  double mean = 0;
  for (double p : tag_distribution) mean += p;
  mean /= static_cast<double>(s);
  double sum = 0;
  for (double p : tag_distribution) sum += (p - mean) * (p - mean);
  double value = sum / static_cast<double>(s - 1);
  return mode == ThetaMode::kSqrt ? std::sqrt(value) : value;
}

void SuffixTrie::add(const std::u32string& word, int max_length, TagId tag,
                     std::int64_t count) {
  std::size_t len = word.size();
  std::size_t depth =
      std::min(len, static_cast<std::size_t>(std::max(max_length, 0)));
  std::int32_t node = 0;
  nodes_[0].total += count;
  add_tag_count(nodes_[0].tag_counts, tag, count);
  for (std::size_t i = 1; i <= depth; ++i) {
    char32_t ch = word[len - i];
    auto [it, inserted] = nodes_[static_cast<std::size_t>(node)]
                              .children.try_emplace(ch, 0);
    if (inserted) {
      it->second = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    node = it->second;
    nodes_[static_cast<std::size_t>(node)].total += count;
    add_tag_count(nodes_[static_cast<std::size_t>(node)].tag_counts, tag,
                  count);
  }
}

void SuffixTrie::insert_suffix(const std::u32string& suffix, TagId tag,
                               std::int64_t count) {
  std::int32_t node = 0;
  for (std::size_t i = suffix.size(); i-- > 0;) {
    auto [it, inserted] = nodes_[static_cast<std::size_t>(node)]
                              .children.try_emplace(suffix[i], 0);
    if (inserted) {
      it->second = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    node = it->second;
  }
  nodes_[static_cast<std::size_t>(node)].total += count;
  add_tag_count(nodes_[static_cast<std::size_t>(node)].tag_counts, tag, count);
}

std::vector<const SuffixTrie::Node*> SuffixTrie::match_path(
    const std::u32string& word, int max_length) const {
  std::vector<const Node*> path;
  path.push_back(&nodes_[0]);
  std::size_t len = word.size();
  std::size_t depth =
      std::min(len, static_cast<std::size_t>(std::max(max_length, 0)));
  std::int32_t node = 0;
  for (std::size_t i = 1; i <= depth; ++i) {
    char32_t ch = word[len - i];
    const auto& children = nodes_[static_cast<std::size_t>(node)].children;
    auto it = children.find(ch);
    if (it == children.end()) break;
    node = it->second;
    path.push_back(&nodes_[static_cast<std::size_t>(node)]);
  }
  return path;
}

void SuffixTrie::visit(const std::function<void(const std::string& suffix,
                                                const Node& node)>& fn) const {
  // Iterative DFS carrying the reversed character path.
  std::u32string reversed;
  struct Frame {
    std::int32_t node;
    std::map<char32_t, std::int32_t>::const_iterator next;
  };
  std::vector<Frame> stack;
  std::string root_suffix;
  fn(root_suffix, nodes_[0]);
  stack.push_back({0, nodes_[0].children.begin()});
  while (!stack.empty()) {
    Frame& frame = stack.back();
    const Node& node = nodes_[static_cast<std::size_t>(frame.node)];
    if (frame.next == node.children.end()) {
      stack.pop_back();
      if (!reversed.empty()) reversed.pop_back();
      continue;
    }
    auto [ch, child] = *frame.next;
    ++frame.next;
    reversed.push_back(ch);
    std::u32string suffix(reversed.rbegin(), reversed.rend());
    fn(encode_utf8(suffix), nodes_[static_cast<std::size_t>(child)]);
    stack.push_back(
        {child, nodes_[static_cast<std::size_t>(child)].children.begin()});
  }
}

SuffixModel SuffixModel::build(const NGramCounts& counts, int max_length,
                               std::int64_t max_word_freq, ThetaMode mode) {
  SuffixModel model;
  model.max_length_ = max_length;
  model.max_word_freq_ = max_word_freq;
  std::size_t s = counts.tags.size();
  if (s < 2) {
    throw TrainError("suffix model needs a tagset of at least 2 tags");
  }
  model.root_distribution_.resize(s);
  for (std::size_t t = 0; t < s; ++t) {
    model.root_distribution_[t] =
        static_cast<double>(counts.tag_occurrences[t]) /
        static_cast<double>(counts.total_tokens);
  }
  model.theta_ = suffix_theta(model.root_distribution_, mode);
  for (const auto& [word, entry] : counts.lexicon) {
    if (entry.total > max_word_freq) continue;
    std::u32string decoded = decode_utf8(word);
    SuffixTrie& trie = is_capitalized(word) ? model.upper_ : model.lower_;
    for (const auto& [tag, count] : entry.tag_counts) {
      trie.add(decoded, max_length, tag, count);
    }
  }
  if (model.lower_.root().total == 0 && model.upper_.root().total == 0) {
    throw TrainError(
        "no lexicon entry is rare enough for suffix statistics; raise the "
        "suffix frequency threshold");
  }
  return model;
}

SuffixModel SuffixModel::from_parts(SuffixTrie lower, SuffixTrie upper,
                                    std::vector<double> root_distribution,
                                    double theta, int max_length,
                                    std::int64_t max_word_freq) {
  SuffixModel model;
  model.lower_ = std::move(lower);
  model.upper_ = std::move(upper);
  model.root_distribution_ = std::move(root_distribution);
  model.theta_ = theta;
  model.max_length_ = max_length;
  model.max_word_freq_ = max_word_freq;
  return model;
}

std::vector<double> SuffixModel::distribution_at(
    std::span<const SuffixTrie::Node* const> path) const {
  std::vector<double> dist = root_distribution_;
  std::vector<double> next(dist.size());
  // path[0] is the root; the recursion consumes one theta per suffix length.
  for (std::size_t level = 1; level < path.size(); ++level) {
    const SuffixTrie::Node& node = *path[level];
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& [tag, count] : node.tag_counts) {
      next[static_cast<std::size_t>(tag)] =
          static_cast<double>(count) / static_cast<double>(node.total);
    }
    for (std::size_t t = 0; t < dist.size(); ++t) {
      dist[t] = (next[t] + theta_ * dist[t]) / (1.0 + theta_);
    }
  }
  return dist;
}

std::vector<double> SuffixModel::tag_distribution(
    std::string_view word) const {
  const SuffixTrie& trie = is_capitalized(word) ? upper_ : lower_;
  std::u32string decoded = decode_utf8(word);
  std::vector<const SuffixTrie::Node*> path =
      trie.match_path(decoded, max_length_);
  return distribution_at(path);
}

double SuffixModel::emission_score(std::string_view word, TagId tag) const {
  double prior = root_distribution_[static_cast<std::size_t>(tag)];
  if (prior <= 0) return 0.0;
  std::vector<double> dist = tag_distribution(word);
  return dist[static_cast<std::size_t>(tag)] / prior;
}

}  // namespace tritag
