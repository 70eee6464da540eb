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

// Command line front end: train, tag, eval, xval, learncurve, relcurve.
// Exit status 0 on success, 1 on usage errors, 2 on data or model errors;
// diagnostics go to stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tritag/corpus.hpp"
#include "tritag/error.hpp"
#include "tritag/evaluation.hpp"
#include "tritag/model_io.hpp"
#include "tritag/tagger.hpp"
#include "tritag/text.hpp"

namespace {

using tritag::TaggerConfig;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tritag::Error("cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw tritag::Error("failed to read \"" + path + "\"");
  return text;
}

std::string read_stdin() {
  return std::string((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
}

tritag::TaggedCorpus load_corpus(const std::string& path) {
  return tritag::parse_tagged(read_file(path));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tritag::Error("cannot open \"" + path + "\" for writing");
  out << text;
  out.flush();
  if (!out) throw tritag::Error("failed to write \"" + path + "\"");
}

// Values accepted by --beam: 0 turns pruning off, anything above 1 prunes.
std::string check_beam(const std::string& value) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() ||
      (v != 0.0 && !(v > 1.0))) {
    return "beam must be 0 (no pruning) or greater than 1";
  }
  return {};
}

struct Options {
  std::string corpus_path;
  std::string model_path;
  std::string gold_path;
  std::string input_path;
  std::string output_path;
  double decode_beam = -1.0;  // negative: use the model's stored default
  bool reliability = false;
  bool full = false;
  std::size_t folds = 10;
  std::vector<std::int64_t> sizes;
  std::size_t repeats = 5;
  std::int64_t test_tokens = 10000;
  std::uint64_t seed = 1;
  std::vector<double> thresholds = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};

  TaggerConfig cfg;
  bool no_cap = false;
  std::string tie_break = "higher";
  std::string theta_mode = "printed";

  TaggerConfig config() const {
    TaggerConfig out = cfg;
    out.capitalization = !no_cap;
    out.tie_break = tie_break == "lower" ? tritag::TieBreak::kLowerOrder
                                         : tritag::TieBreak::kHigherOrder;
    out.theta_mode = theta_mode == "sqrt" ? tritag::ThetaMode::kSqrt
                                          : tritag::ThetaMode::kPrinted;
    return out;
  }
};

// Training-time knobs, shared by every subcommand that builds a model.
void add_config_flags(CLI::App* sub, Options& o) {
  sub->add_flag("--no-cap", o.no_cap,
                "do not split contextual states by capitalization");
  sub->add_option("--beam", o.cfg.beam_theta,
                  "stored beam threshold (0 = exact search)")
      ->check(CLI::Validator(check_beam, "BEAM"));
  sub->add_option("--max-suffix", o.cfg.max_suffix,
                  "longest suffix used for unknown words")
      ->check(CLI::PositiveNumber);
  sub->add_option("--suffix-freq", o.cfg.suffix_freq_threshold,
                  "words at most this frequent feed the suffix tries")
      ->check(CLI::PositiveNumber);
  sub->add_option("--unknown-cap", o.cfg.unknown_cap,
                  "tag candidates kept per unknown word (0 = all)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--tie-break", o.tie_break,
                  "interpolation tie rule: higher or lower order wins")
      ->check(CLI::IsMember({"higher", "lower"}));
  sub->add_option("--theta-mode", o.theta_mode,
                  "suffix smoothing weight: printed formula or its sqrt")
      ->check(CLI::IsMember({"printed", "sqrt"}));
}

void run_train(const Options& o) {
  tritag::TaggedCorpus corpus = load_corpus(o.corpus_path);
  tritag::TaggerModel model = tritag::TaggerModel::assemble(corpus, o.config());
  tritag::save_model(model, o.model_path);
  const tritag::InterpolationWeights& w = model.weights();
  std::fprintf(stderr,
               "trained on %zu sentences, %lld tokens, %zu tags\n"
               "lambda %.6f %.6f %.6f, suffix theta %.6f\n"
               "wrote %s\n",
               corpus.sentences.size(),
               static_cast<long long>(corpus.token_count), corpus.tagset.size(),
               w.lambda1, w.lambda2, w.lambda3, model.suffix_model().theta(),
               o.model_path.c_str());
}

void run_tag(const Options& o) {
  tritag::TaggerModel model = tritag::load_model(o.model_path);
  auto start = std::chrono::steady_clock::now();
  std::string text = o.input_path.empty() ? read_stdin() : read_file(o.input_path);
  std::vector<tritag::Sentence> sentences = tritag::has_blank_line(text)
                                                ? tritag::split_blocks(text)
                                                : tritag::split_untagged(text);
  std::string out;
  out.reserve(text.size() * 2);
  std::int64_t tokens = 0;
  bool first = true;
  for (const tritag::Sentence& sentence : sentences) {
    std::vector<std::string> words;
    words.reserve(sentence.tokens.size());
    for (const tritag::Token& token : sentence.tokens) {
      words.push_back(token.surface);
    }
    tritag::TaggedSentence result = model.decode(words, o.decode_beam);
    std::vector<tritag::Quotient> quotients;
    if (o.reliability) quotients = model.reliability(words, result.tags);
    if (!first) out.push_back('\n');
    first = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      out.append(words[i]);
      out.push_back('\t');
      out.append(result.tags[i]);
      if (o.reliability) {
        out.push_back('\t');
        out.append(tritag::format_shortest(quotients[i].value()));
      }
      out.push_back('\n');
    }
    tokens += static_cast<std::int64_t>(words.size());
  }
  write_output(o.output_path, out);
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::fprintf(stderr, "tagged %lld tokens in %.3f s (%.0f tokens/s)\n",
               static_cast<long long>(tokens), elapsed,
               elapsed > 0 ? static_cast<double>(tokens) / elapsed : 0.0);
}

void run_eval(const Options& o) {
  tritag::TaggerModel model = tritag::load_model(o.model_path);
  tritag::TaggedCorpus gold = load_corpus(o.gold_path);
  tritag::ScoreReport report = tritag::score(model, gold, o.decode_beam);
  std::cout << tritag::format_score(report);
}

void run_xval(const Options& o) {
  tritag::TaggedCorpus corpus = load_corpus(o.corpus_path);
  tritag::CrossValReport report =
      tritag::cross_validate(corpus, o.config(), o.folds);
  std::cout << tritag::format_cross_val(report);
}

void run_learncurve(const Options& o) {
  tritag::TaggedCorpus corpus = load_corpus(o.corpus_path);
  std::vector<tritag::LearningPoint> points =
      tritag::learning_curve(corpus, o.config(), o.sizes, o.repeats,
                             o.test_tokens, o.seed);
  if (o.full) {
    std::cout << tritag::format_learning(points);
    return;
  }
  for (const tritag::LearningPoint& p : points) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", p.mean_accuracy);
    std::cout << p.requested_tokens << '\t' << buf << '\n';
  }
}

void run_relcurve(const Options& o) {
  tritag::TaggedCorpus corpus = load_corpus(o.corpus_path);
  std::vector<tritag::TokenConfidence> observations =
      tritag::collect_confidence_folds(corpus, o.config(), o.folds);
  std::vector<tritag::ReliabilityPoint> points =
      tritag::reliability_curve(observations, o.thresholds);
  if (o.full) {
    std::cout << tritag::format_reliability(points);
    return;
  }
  for (const tritag::ReliabilityPoint& p : points) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", p.reliable_accuracy());
    std::cout << tritag::format_shortest(p.threshold) << '\t' << buf << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  Options o;
  CLI::App app{"trigram part-of-speech tagger with suffix-based handling of unknown words"};
  app.require_subcommand(1);

  CLI::App* train = app.add_subcommand("train", "estimate a model from a tagged corpus");
  train->add_option("-c,--corpus", o.corpus_path, "tagged training corpus")->required();
  train->add_option("-o,--output", o.model_path, "model file to write")->required();
  add_config_flags(train, o);
  train->callback([&o] { run_train(o); });

  CLI::App* tag = app.add_subcommand("tag", "tag untagged text");
  tag->add_option("-m,--model", o.model_path, "model file")->required();
  tag->add_option("input", o.input_path, "untagged text (stdin when omitted)");
  tag->add_option("-o,--output", o.output_path, "write here instead of stdout");
  tag->add_option("--beam", o.decode_beam, "override the stored beam threshold")
      ->check(CLI::Validator(check_beam, "BEAM"));
  tag->add_flag("--reliability", o.reliability,
                "append a confidence quotient column (inf when no alternative exists)");
  tag->callback([&o] { run_tag(o); });

  CLI::App* eval = app.add_subcommand("eval", "score a model against gold tags");
  eval->add_option("-m,--model", o.model_path, "model file")->required();
  eval->add_option("-g,--gold", o.gold_path, "tagged reference corpus")->required();
  eval->add_option("--beam", o.decode_beam, "override the stored beam threshold")
      ->check(CLI::Validator(check_beam, "BEAM"));
  eval->callback([&o] { run_eval(o); });

  CLI::App* xval = app.add_subcommand("xval", "k-fold cross-validation");
  xval->add_option("-c,--corpus", o.corpus_path, "tagged corpus")->required();
  xval->add_option("-k,--folds", o.folds, "number of folds")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  add_config_flags(xval, o);
  xval->callback([&o] { run_xval(o); });

  CLI::App* learncurve =
      app.add_subcommand("learncurve", "accuracy against training size");
  learncurve->add_option("-c,--corpus", o.corpus_path, "tagged corpus")->required();
  learncurve->add_option("--sizes", o.sizes, "training sizes in tokens")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  learncurve->add_option("--repeats", o.repeats, "resamples per size")
      ->check(CLI::PositiveNumber);
  learncurve->add_option("--test-tokens", o.test_tokens, "held-out test size")
      ->check(CLI::PositiveNumber);
  learncurve->add_option("--seed", o.seed, "sampling seed");
  learncurve->add_flag("--full", o.full, "emit every column, not just accuracy");
  add_config_flags(learncurve, o);
  learncurve->callback([&o] { run_learncurve(o); });

  CLI::App* relcurve = app.add_subcommand(
      "relcurve", "accuracy of confident assignments against the rest");
  relcurve->add_option("-c,--corpus", o.corpus_path, "tagged corpus")->required();
  relcurve->add_option("-k,--folds", o.folds, "number of folds")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  relcurve->add_option("--thresholds", o.thresholds, "quotient thresholds")
      ->delimiter(',');
  relcurve->add_flag("--full", o.full, "emit every column, not just accuracy");
  add_config_flags(relcurve, o);
  relcurve->callback([&o] { run_relcurve(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tritag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
