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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tritag/error.hpp"

using namespace tritag;

namespace {

// The two-sentence fixture used throughout: all words lowercase, every word
// unambiguous, both sentences share the tag sequence DT NN VB SENT.
const char* kFixtureA =
    "the\tDT\n"
    "dog\tNN\n"
    "barks\tVB\n"
    ".\tSENT\n"
    "\n"
    "the\tDT\n"
    "cat\tNN\n"
    "sleeps\tVB\n"
    ".\tSENT\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> surfaces(const Sentence& sentence) {
  std::vector<std::string> out;
  for (const Token& t : sentence.tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("parse_tagged on the fixture") {
  TaggedCorpus corpus = parse_tagged(kFixtureA);
  REQUIRE(corpus.sentences.size() == 2);
  CHECK(corpus.token_count == 8);
  CHECK(corpus.tagset == std::vector<std::string>{"DT", "NN", "SENT", "VB"});
  REQUIRE(corpus.sentences[0].tokens.size() == 4);
  CHECK(corpus.sentences[0].tokens[1].surface == "dog");
  CHECK(corpus.sentences[0].tokens[1].tag == "NN");
  CHECK(corpus.sentences[1].tokens[1].surface == "cat");
}

TEST_CASE("bundled fixture file matches the inline fixture") {
  TaggedCorpus corpus =
      parse_tagged(read_file(std::string(TRITAG_DATA_DIR) + "/fixture_a.tt"));
  CHECK(corpus.token_count == 8);
  CHECK(corpus.tagset.size() == 4);
}

TEST_CASE("parse_tagged accepts the empty string and trailing blank lines") {
  CHECK(parse_tagged("").sentences.empty());
  CHECK(parse_tagged("\n\n").sentences.empty());
  // A final sentence without a trailing newline is kept.
  TaggedCorpus tail = parse_tagged("a\tX");
  REQUIRE(tail.sentences.size() == 1);
  CHECK(tail.token_count == 1);
}

TEST_CASE("parse_tagged reports malformed lines with their number") {
  CHECK_THROWS_WITH_AS(parse_tagged("the DT NN"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(parse_tagged("dog\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("dog\t\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("\tNN\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("a b\tNN\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("dog\tNN\textra\n"), ParseError);
  // Boundary labels may not appear as tags.
  CHECK_THROWS_AS(parse_tagged("dog\t<BOS>\n"), ParseError);
  CHECK_THROWS_AS(parse_tagged("dog\t<EOS>\n"), ParseError);
  // The error names the right line when earlier lines are fine.
  CHECK_THROWS_WITH_AS(parse_tagged("a\tX\nb\tY\nbroken line\n"),
                       doctest::Contains("line 3"), ParseError);
}

TEST_CASE("serialize_tagged inverts parse_tagged") {
  CHECK(serialize_tagged(parse_tagged(kFixtureA)) == kFixtureA);
  const char* no_trailing_blank = "a\tX\n\nb\tY\n";
  CHECK(serialize_tagged(parse_tagged(no_trailing_blank)) == no_trailing_blank);
}

TEST_CASE("make_corpus recomputes tagset and token count") {
  Sentence s1;
  s1.tokens = {{"b", "Y"}, {"a", "X"}};
  Sentence s2;
  s2.tokens = {{"c", "X"}};
  TaggedCorpus corpus = make_corpus({s1, s2});
  CHECK(corpus.token_count == 3);
  CHECK(corpus.tagset == std::vector<std::string>{"X", "Y"});
}

TEST_CASE("split_untagged ends sentences at the ender tokens") {
  std::vector<Sentence> two = split_untagged("He ran . She slept .");
  REQUIRE(two.size() == 2);
  CHECK(surfaces(two[0]) == std::vector<std::string>{"He", "ran", "."});
  CHECK(surfaces(two[1]) == std::vector<std::string>{"She", "slept", "."});

  std::vector<Sentence> one = split_untagged("no boundary here");
  REQUIRE(one.size() == 1);
  CHECK(one[0].tokens.size() == 3);
  CHECK(one[0].tokens[0].tag.empty());

  CHECK(split_untagged("Wait ! Go ?").size() == 2);
  CHECK(split_untagged("a ; b ;").size() == 2);
  CHECK(split_untagged("").empty());
  CHECK(split_untagged("  \n ").empty());
  // The ender must be the whole token.
  CHECK(split_untagged("e.g. more words").size() == 1);
}

TEST_CASE("split_blocks uses blank lines as the only boundary") {
  std::vector<Sentence> blocks = split_blocks("the dog\n\nbarks .\n");
  REQUIRE(blocks.size() == 2);
  CHECK(surfaces(blocks[0]) == std::vector<std::string>{"the", "dog"});
  CHECK(surfaces(blocks[1]) == std::vector<std::string>{"barks", "."});
  CHECK(split_blocks("a b c").size() == 1);
  CHECK(split_blocks("").empty());
  // A period does not end a block.
  std::vector<Sentence> dotted = split_blocks("a . b\n\nc");
  REQUIRE(dotted.size() == 2);
  CHECK(dotted[0].tokens.size() == 3);
}

TEST_CASE("has_blank_line ignores trailing newlines") {
  CHECK_FALSE(has_blank_line("a\nb\n"));
  CHECK_FALSE(has_blank_line("a\nb\n\n"));
  CHECK_FALSE(has_blank_line(""));
  CHECK(has_blank_line("a\n\nb"));
  CHECK(has_blank_line("a\n\r\nb"));
}

TEST_CASE("partition_contiguous fixture examples") {
  TaggedCorpus corpus = parse_tagged(kFixtureA);
  auto [train0, test0] = partition_contiguous(corpus, 0, 2);
  REQUIRE(test0.sentences.size() == 1);
  CHECK(test0.sentences[0].tokens[1].surface == "dog");
  REQUIRE(train0.sentences.size() == 1);
  CHECK(train0.sentences[0].tokens[1].surface == "cat");

  auto [train1, test1] = partition_contiguous(corpus, 1, 2);
  CHECK(test1.sentences[0].tokens[1].surface == "cat");
  CHECK(train1.sentences[0].tokens[1].surface == "dog");

  // One fold: everything is the test block.
  auto [train_all, test_all] = partition_contiguous(corpus, 0, 1);
  CHECK(test_all.sentences.size() == 2);
  CHECK(train_all.sentences.empty());

  CHECK_THROWS_AS(partition_contiguous(corpus, 2, 2), EvalError);
  CHECK_THROWS_AS(partition_contiguous(corpus, 0, 3), EvalError);
  CHECK_THROWS_AS(partition_contiguous(corpus, 0, 0), EvalError);
}

TEST_CASE("partition_contiguous covers every sentence exactly once") {
  // Sweep sizes that do not divide evenly; every fold must be non-empty and
  // block sizes may differ by at most one.
  for (std::size_t count : {4u, 9u, 10u, 13u}) {
    std::vector<Sentence> sentences;
    for (std::size_t i = 0; i < count; ++i) {
      Sentence s;
      s.tokens = {{"w" + std::to_string(i), "X"}, {"v", "Y"}};
      sentences.push_back(s);
    }
    TaggedCorpus corpus = make_corpus(std::move(sentences));
    for (std::size_t folds : {2u, 3u, 4u}) {
      if (count < folds) continue;
      std::set<std::string> tested;
      std::size_t smallest = count;
      std::size_t largest = 0;
      for (std::size_t fold = 0; fold < folds; ++fold) {
        auto [train, test] = partition_contiguous(corpus, fold, folds);
        CHECK(train.sentences.size() + test.sentences.size() == count);
        CHECK_FALSE(test.sentences.empty());
        smallest = std::min(smallest, test.sentences.size());
        largest = std::max(largest, test.sentences.size());
        for (const Sentence& s : test.sentences) {
          CHECK(tested.insert(s.tokens[0].surface).second);
        }
      }
      CHECK(tested.size() == count);
      CHECK(largest - smallest <= 1);
    }
  }
}

TEST_CASE("sample_disjoint draws disjoint sentence sets") {
  TaggedCorpus corpus = parse_tagged(kFixtureA);
  auto [train, test] = sample_disjoint(corpus, 4, 4, 7);
  REQUIRE(train.sentences.size() == 1);
  REQUIRE(test.sentences.size() == 1);
  CHECK(train.sentences[0].tokens[1].surface !=
        test.sentences[0].tokens[1].surface);
  CHECK(train.token_count == 4);
  CHECK(test.token_count == 4);

  // Identical seeds give identical splits.
  auto [train2, test2] = sample_disjoint(corpus, 4, 4, 7);
  CHECK(train2.sentences[0].tokens[1].surface ==
        train.sentences[0].tokens[1].surface);

  CHECK_THROWS_AS(sample_disjoint(corpus, 9, 0, 1), EvalError);
  CHECK_THROWS_AS(sample_disjoint(corpus, 0, 9, 1), EvalError);
  CHECK_THROWS_AS(sample_disjoint(corpus, -1, 0, 1), EvalError);

  // A zero training budget leaves the train side empty.
  auto [none, some] = sample_disjoint(corpus, 0, 4, 3);
  CHECK(none.sentences.empty());
  CHECK(some.token_count >= 4);
}

TEST_CASE("sample_disjoint fills budgets with whole sentences") {
  std::vector<Sentence> sentences;
  for (int i = 0; i < 40; ++i) {
    Sentence s;
    for (int j = 0; j < 3; ++j) {
      s.tokens.push_back({"w" + std::to_string(i) + "_" + std::to_string(j),
                          j == 0 ? "X" : "Y"});
    }
    sentences.push_back(s);
  }
  TaggedCorpus corpus = make_corpus(std::move(sentences));
  auto [train, test] = sample_disjoint(corpus, 10, 7, 99);
  CHECK(train.token_count >= 10);
  CHECK(train.token_count < 10 + 3);
  CHECK(test.token_count >= 7);
  CHECK(test.token_count < 7 + 3);
  std::set<std::string> train_words;
  for (const Sentence& s : train.sentences) {
    train_words.insert(s.tokens[0].surface);
  }
  for (const Sentence& s : test.sentences) {
    CHECK(train_words.count(s.tokens[0].surface) == 0);
  }
}
