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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tritag {

// Reserved sentence boundary labels; they may not appear as corpus tags.
inline constexpr std::string_view kBosLabel = "<BOS>";
inline constexpr std::string_view kEosLabel = "<EOS>";

struct Token {
  std::string surface;
  std::string tag;  // empty in untagged sentences
};

struct Sentence {
  std::vector<Token> tokens;
};

// Tagged material for training and evaluation. `tagset` lists the tags that
// actually occur, sorted and unique; `token_count` is what the model formulas
// call N.
struct TaggedCorpus {
  std::vector<Sentence> sentences;
  std::vector<std::string> tagset;
  std::int64_t token_count = 0;
};

// Builds a corpus from sentences, recomputing tagset and token count.
TaggedCorpus make_corpus(std::vector<Sentence> sentences);

// Parses the one-token-per-line format: `surface<TAB>tag`, blank lines
// between sentences. Both fields must be non-empty and free of whitespace;
// the boundary labels are rejected as tags. Errors carry 1-based line
// numbers. A final sentence without a trailing blank line is kept. The empty
// string parses to an empty corpus.
TaggedCorpus parse_tagged(std::string_view text);

// Inverse of parse_tagged: `surface<TAB>tag` lines, one blank line between
// sentences, trailing newline after the last token line.
std::string serialize_tagged(const TaggedCorpus& corpus);

// Splits raw whitespace-separated text into sentences: a sentence ends after
// every token that is exactly `.`, `!`, `?`, or `;`. A trailing fragment
// without an ender forms the final sentence. Tokens keep empty tags.
std::vector<Sentence> split_untagged(std::string_view text);

// Splits text whose sentence breaks are already marked by blank lines: one
// sentence per block, tokens separated by any whitespace. Tokens keep empty
// tags.
std::vector<Sentence> split_blocks(std::string_view text);

// True when a blank line separates two stretches of content (trailing
// newlines do not count), i.e. when the text carries its own sentence breaks.
bool has_blank_line(std::string_view text);

// (train, test) halves for fold `fold` of `folds`: the test half is the
// fold-th of `folds` contiguous sentence blocks whose sizes differ by at most
// one, the train half is the remainder in original order. Requires
// fold < folds and at least `folds` sentences.
std::pair<TaggedCorpus, TaggedCorpus> partition_contiguous(
    const TaggedCorpus& corpus, std::size_t fold, std::size_t folds);

// (train, test) built by drawing whole sentences without replacement from a
// seeded shuffle: the train side is filled until its token budget is met or
// exceeded, then the test side. The sides never share a sentence. Raises if
// the budgets exceed the corpus or if the test budget cannot be met after
// the train side overshoots its own.
std::pair<TaggedCorpus, TaggedCorpus> sample_disjoint(
    const TaggedCorpus& corpus, std::int64_t train_tokens,
    std::int64_t test_tokens, std::uint64_t seed);

}  // namespace tritag
