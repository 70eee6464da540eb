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

#include "tritag/corpus.hpp"

#include <algorithm>
#include <set>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

bool is_sentence_ender(std::string_view token) {
  return token == "." || token == "!" || token == "?" || token == ";";
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what,
                            std::string_view line) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what + ": \"" +
                   std::string(line) + "\"");
}

}  // namespace

TaggedCorpus make_corpus(std::vector<Sentence> sentences) {
  TaggedCorpus corpus;
  corpus.sentences = std::move(sentences);
  std::set<std::string> tags;
  for (const Sentence& s : corpus.sentences) {
    corpus.token_count += static_cast<std::int64_t>(s.tokens.size());
    for (const Token& t : s.tokens) tags.insert(t.tag);
  }
  corpus.tagset.assign(tags.begin(), tags.end());
  return corpus;
}

TaggedCorpus parse_tagged(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && line_no > 0 && text.back() == '\n') break;
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!current.tokens.empty()) {
        sentences.push_back(std::move(current));
        current = Sentence{};
      }
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      fail_line(line_no, "expected exactly two tab-separated fields", line);
    }
    std::string_view surface = line.substr(0, tab);
    std::string_view tag = line.substr(tab + 1);
    if (surface.empty()) fail_line(line_no, "empty token", line);
    if (tag.empty()) fail_line(line_no, "empty tag", line);
    if (contains_whitespace(surface) || contains_whitespace(tag)) {
      fail_line(line_no, "whitespace inside a field", line);
    }
    if (tag == kBosLabel || tag == kEosLabel) {
      fail_line(line_no, "reserved boundary label used as a tag", line);
    }
    current.tokens.push_back(Token{std::string(surface), std::string(tag)});
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return make_corpus(std::move(sentences));
}

std::string serialize_tagged(const TaggedCorpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    if (i > 0) out += '\n';
    for (const Token& t : corpus.sentences[i].tokens) {
      out += t.surface;
      out += '\t';
      out += t.tag;
      out += '\n';
    }
  }
  return out;
}

std::vector<Sentence> split_untagged(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::string_view token = text.substr(start, i - start);
    current.tokens.push_back(Token{std::string(token), std::string()});
    if (is_sentence_ender(token)) {
      sentences.push_back(std::move(current));
      current = Sentence{};
    }
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<Sentence> split_blocks(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    if (line.empty()) {
      if (!current.tokens.empty()) {
        sentences.push_back(std::move(current));
        current = Sentence{};
      }
    } else {
      std::size_t i = 0;
      auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
      };
      while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        current.tokens.push_back(
            Token{std::string(line.substr(start, i - start)), std::string()});
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

bool has_blank_line(std::string_view text) {
  std::size_t end = text.size();
  while (end > 0 && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
  std::string_view body = text.substr(0, end);
  for (std::size_t i = 0; i + 1 < body.size(); ++i) {
    if (body[i] == '\n' &&
        (body[i + 1] == '\n' || (body[i + 1] == '\r' && i + 2 < body.size() &&
                                 body[i + 2] == '\n'))) {
      return true;
    }
  }
  return false;
}

std::pair<TaggedCorpus, TaggedCorpus> partition_contiguous(
    const TaggedCorpus& corpus, std::size_t fold, std::size_t folds) {
  if (folds == 0) throw EvalError("fold count must be positive");
  if (fold >= folds) {
    throw EvalError("fold index " + std::to_string(fold) +
                    " out of range for " + std::to_string(folds) + " folds");
  }
  std::size_t count = corpus.sentences.size();
  if (count < folds) {
    throw EvalError("corpus has " + std::to_string(count) +
                    " sentences, fewer than " + std::to_string(folds) +
                    " folds");
  }
  // Balanced boundaries: block sizes differ by at most one and every fold is
  // non-empty whenever count >= folds.
  std::size_t begin = fold * count / folds;
  std::size_t end = (fold + 1) * count / folds;
  std::vector<Sentence> test(corpus.sentences.begin() + begin,
                             corpus.sentences.begin() + end);
  std::vector<Sentence> train;
  train.reserve(count - (end - begin));
  train.insert(train.end(), corpus.sentences.begin(),
               corpus.sentences.begin() + begin);
  train.insert(train.end(), corpus.sentences.begin() + end,
               corpus.sentences.end());
  return {make_corpus(std::move(train)), make_corpus(std::move(test))};
}

std::pair<TaggedCorpus, TaggedCorpus> sample_disjoint(
    const TaggedCorpus& corpus, std::int64_t train_tokens,
    std::int64_t test_tokens, std::uint64_t seed) {
  if (train_tokens < 0 || test_tokens < 0) {
    throw EvalError("token budgets must be non-negative");
  }
  if (train_tokens + test_tokens > corpus.token_count) {
    throw EvalError("token budgets (" + std::to_string(train_tokens) + " + " +
                    std::to_string(test_tokens) + ") exceed corpus size " +
                    std::to_string(corpus.token_count));
  }
  std::vector<std::size_t> order(corpus.sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Explicit Fisher-Yates so the shuffle is identical on every platform.
  std::uint64_t state = seed;
  for (std::size_t i = order.size(); i > 1; --i) {
    state = splitmix64(state);
    std::swap(order[i - 1], order[state % i]);
  }
  std::vector<Sentence> train, test;
  std::int64_t train_have = 0, test_have = 0;
  std::size_t next = 0;
  while (train_have < train_tokens && next < order.size()) {
    const Sentence& s = corpus.sentences[order[next++]];
    train_have += static_cast<std::int64_t>(s.tokens.size());
    train.push_back(s);
  }
  while (test_have < test_tokens && next < order.size()) {
    const Sentence& s = corpus.sentences[order[next++]];
    test_have += static_cast<std::int64_t>(s.tokens.size());
    test.push_back(s);
  }
  if (train_have < train_tokens || test_have < test_tokens) {
    throw EvalError(
        "could not satisfy token budgets after whole-sentence selection; "
        "reduce the budgets");
  }
  return {make_corpus(std::move(train)), make_corpus(std::move(test))};
}

}  // namespace tritag
