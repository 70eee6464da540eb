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

#include "tritag/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <utility>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Mean and sample standard deviation of one accuracy field over folds.
template <typename Get>
std::pair<double, double> spread(const std::vector<ScoreReport>& folds, Get get) {
  if (folds.empty()) return {1.0, 0.0};
  double mean = 0;
  for (const ScoreReport& fold : folds) mean += get(fold);
  mean /= static_cast<double>(folds.size());
  if (folds.size() < 2) return {mean, 0.0};
  double sum = 0;
  for (const ScoreReport& fold : folds) {
    double d = get(fold) - mean;
    sum += d * d;
  }
  return {mean, std::sqrt(sum / static_cast<double>(folds.size() - 1))};
}

std::vector<std::string> surfaces(const Sentence& sentence) {
  std::vector<std::string> words;
  words.reserve(sentence.tokens.size());
  for (const Token& token : sentence.tokens) words.push_back(token.surface);
  return words;
}

}  // namespace

double ScoreReport::accuracy() const { return ratio(correct, total); }
double ScoreReport::known_accuracy() const { return ratio(known_correct, known); }
double ScoreReport::unknown_accuracy() const { return ratio(unknown_correct, unknown); }
double ScoreReport::unknown_share() const {
  return total == 0 ? 0.0 : static_cast<double>(unknown) / static_cast<double>(total);
}

ScoreReport score(const TaggerModel& model, const TaggedCorpus& test,
                  double beam_theta) {
  if (test.sentences.empty()) throw EvalError("empty test set");
  ScoreReport report;
  for (const Sentence& sentence : test.sentences) {
    std::vector<std::string> words = surfaces(sentence);
    TaggedSentence result = model.decode(words, beam_theta);
    for (std::size_t i = 0; i < words.size(); ++i) {
      bool hit = result.tags[i] == sentence.tokens[i].tag;
      report.total += 1;
      report.correct += hit;
      if (result.known[i]) {
        report.known += 1;
        report.known_correct += hit;
      } else {
        report.unknown += 1;
        report.unknown_correct += hit;
      }
    }
  }
  return report;
}

ScoreReport CrossValReport::pooled() const {
  ScoreReport sum;
  for (const ScoreReport& fold : folds) {
    sum.total += fold.total;
    sum.correct += fold.correct;
    sum.known += fold.known;
    sum.known_correct += fold.known_correct;
    sum.unknown += fold.unknown;
    sum.unknown_correct += fold.unknown_correct;
  }
  return sum;
}

double CrossValReport::mean_accuracy() const {
  return spread(folds, [](const ScoreReport& r) { return r.accuracy(); }).first;
}
double CrossValReport::stddev_accuracy() const {
  return spread(folds, [](const ScoreReport& r) { return r.accuracy(); }).second;
}
double CrossValReport::mean_known_accuracy() const {
  return spread(folds, [](const ScoreReport& r) { return r.known_accuracy(); }).first;
}
double CrossValReport::mean_unknown_accuracy() const {
  return spread(folds, [](const ScoreReport& r) { return r.unknown_accuracy(); }).first;
}

CrossValReport cross_validate(const TaggedCorpus& corpus,
                              const TaggerConfig& config, std::size_t folds,
                              double beam_theta) {
  if (folds < 2) throw EvalError("cross-validation needs at least 2 folds");
  if (corpus.sentences.size() < folds) {
    throw EvalError("corpus has " + std::to_string(corpus.sentences.size()) +
                    " sentences, too few for " + std::to_string(folds) +
                    " folds");
  }
  std::vector<std::future<ScoreReport>> pending;
  pending.reserve(folds);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    pending.push_back(std::async(std::launch::async, [&, fold] {
      auto [train, test] = partition_contiguous(corpus, fold, folds);
      TaggerModel model = TaggerModel::assemble(train, config);
      return score(model, test, beam_theta);
    }));
  }
  CrossValReport report;
  report.folds.reserve(folds);
  for (auto& future : pending) report.folds.push_back(future.get());
  return report;
}

std::vector<LearningPoint> learning_curve(const TaggedCorpus& corpus,
                                          const TaggerConfig& config,
                                          std::span<const std::int64_t> sizes,
                                          std::size_t repeats,
                                          std::int64_t test_tokens,
                                          std::uint64_t seed,
                                          double beam_theta) {
  if (repeats == 0) throw EvalError("learning curve needs at least 1 repeat");
  std::vector<LearningPoint> points;
  points.reserve(sizes.size());
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<std::future<std::pair<ScoreReport, std::int64_t>>> pending;
    pending.reserve(repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
      std::uint64_t draw_seed = splitmix64(splitmix64(seed + s) + r);
      pending.push_back(std::async(std::launch::async, [&, s, draw_seed] {
        auto [train, test] =
            sample_disjoint(corpus, sizes[s], test_tokens, draw_seed);
        TaggerModel model = TaggerModel::assemble(train, config);
        return std::make_pair(score(model, test, beam_theta), train.token_count);
      }));
    }
    std::vector<ScoreReport> reports;
    double train_sum = 0;
    for (auto& future : pending) {
      auto [report, train_count] = future.get();
      reports.push_back(report);
      train_sum += static_cast<double>(train_count);
    }
    LearningPoint point;
    point.requested_tokens = sizes[s];
    point.mean_train_tokens = train_sum / static_cast<double>(repeats);
    auto [mean, dev] =
        spread(reports, [](const ScoreReport& r) { return r.accuracy(); });
    point.mean_accuracy = mean;
    point.stddev_accuracy = dev;
    point.mean_known_accuracy =
        spread(reports, [](const ScoreReport& r) { return r.known_accuracy(); }).first;
    point.mean_unknown_accuracy =
        spread(reports, [](const ScoreReport& r) { return r.unknown_accuracy(); }).first;
    point.mean_unknown_share =
        spread(reports, [](const ScoreReport& r) { return r.unknown_share(); }).first;
    points.push_back(point);
  }
  return points;
}

std::vector<TokenConfidence> collect_confidence(const TaggerModel& model,
                                                const TaggedCorpus& test) {
  std::vector<TokenConfidence> observations;
  observations.reserve(static_cast<std::size_t>(test.token_count));
  for (const Sentence& sentence : test.sentences) {
    std::vector<std::string> words = surfaces(sentence);
    TaggedSentence result = model.decode(words, 0.0);
    std::vector<Quotient> quotients = model.reliability(words, result.tags);
    for (std::size_t i = 0; i < words.size(); ++i) {
      observations.push_back(
          {quotients[i], result.tags[i] == sentence.tokens[i].tag});
    }
  }
  return observations;
}

std::vector<TokenConfidence> collect_confidence_folds(
    const TaggedCorpus& corpus, const TaggerConfig& config, std::size_t folds) {
  if (folds < 2) throw EvalError("cross-validation needs at least 2 folds");
  if (corpus.sentences.size() < folds) {
    throw EvalError("corpus has " + std::to_string(corpus.sentences.size()) +
                    " sentences, too few for " + std::to_string(folds) +
                    " folds");
  }
  std::vector<std::future<std::vector<TokenConfidence>>> pending;
  pending.reserve(folds);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    pending.push_back(std::async(std::launch::async, [&, fold] {
      auto [train, test] = partition_contiguous(corpus, fold, folds);
      TaggerModel model = TaggerModel::assemble(train, config);
      return collect_confidence(model, test);
    }));
  }
  std::vector<TokenConfidence> observations;
  for (auto& future : pending) {
    std::vector<TokenConfidence> part = future.get();
    observations.insert(observations.end(), part.begin(), part.end());
  }
  return observations;
}

double ReliabilityPoint::reliable_share() const {
  std::int64_t total = reliable + rest;
  return total == 0 ? 0.0 : static_cast<double>(reliable) / static_cast<double>(total);
}
double ReliabilityPoint::reliable_accuracy() const {
  return ratio(reliable_correct, reliable);
}
double ReliabilityPoint::rest_accuracy() const { return ratio(rest_correct, rest); }

std::vector<ReliabilityPoint> reliability_curve(
    std::span<const TokenConfidence> observations,
    std::span<const double> thresholds) {
  std::vector<ReliabilityPoint> points;
  points.reserve(thresholds.size());
  for (double threshold : thresholds) {
    ReliabilityPoint point;
    point.threshold = threshold;
    for (const TokenConfidence& obs : observations) {
      if (obs.quotient.reliable(threshold)) {
        point.reliable += 1;
        point.reliable_correct += obs.correct;
      } else {
        point.rest += 1;
        point.rest_correct += obs.correct;
      }
    }
    points.push_back(point);
  }
  return points;
}

std::string format_score(const ScoreReport& report) {
  std::string out;
  out += "tokens " + std::to_string(report.total) + "\n";
  out += "accuracy " + fixed6(report.accuracy()) + "\n";
  out += "known_tokens " + std::to_string(report.known) + "\n";
  out += "known_accuracy " + fixed6(report.known_accuracy()) + "\n";
  out += "unknown_tokens " + std::to_string(report.unknown) + "\n";
  out += "unknown_accuracy " + fixed6(report.unknown_accuracy()) + "\n";
  return out;
}

std::string format_cross_val(const CrossValReport& report) {
  std::string out = "fold\ttokens\taccuracy\tknown\tunknown\n";
  for (std::size_t i = 0; i < report.folds.size(); ++i) {
    const ScoreReport& fold = report.folds[i];
    out += std::to_string(i) + "\t" + std::to_string(fold.total) + "\t" +
           fixed6(fold.accuracy()) + "\t" + fixed6(fold.known_accuracy()) +
           "\t" + fixed6(fold.unknown_accuracy()) + "\n";
  }
  ScoreReport pooled = report.pooled();
  out += "mean_accuracy " + fixed6(report.mean_accuracy()) + "\n";
  out += "stddev_accuracy " + fixed6(report.stddev_accuracy()) + "\n";
  out += "mean_known_accuracy " + fixed6(report.mean_known_accuracy()) + "\n";
  out += "mean_unknown_accuracy " + fixed6(report.mean_unknown_accuracy()) + "\n";
  out += "pooled_accuracy " + fixed6(pooled.accuracy()) + "\n";
  out += "pooled_unknown_share " + fixed6(pooled.unknown_share()) + "\n";
  return out;
}

std::string format_learning(std::span<const LearningPoint> points) {
  std::string out =
      "requested\tmean_train\taccuracy\tstddev\tknown\tunknown\tunknown_share\n";
  for (const LearningPoint& p : points) {
    out += std::to_string(p.requested_tokens) + "\t" + fixed6(p.mean_train_tokens) +
           "\t" + fixed6(p.mean_accuracy) + "\t" + fixed6(p.stddev_accuracy) +
           "\t" + fixed6(p.mean_known_accuracy) + "\t" +
           fixed6(p.mean_unknown_accuracy) + "\t" + fixed6(p.mean_unknown_share) +
           "\n";
  }
  return out;
}

std::string format_reliability(std::span<const ReliabilityPoint> points) {
  std::string out =
      "threshold\treliable_share\treliable_accuracy\trest_accuracy\treliable\trest\n";
  for (const ReliabilityPoint& p : points) {
    out += format_shortest(p.threshold) + "\t" + fixed6(p.reliable_share()) +
           "\t" + fixed6(p.reliable_accuracy()) + "\t" + fixed6(p.rest_accuracy()) +
           "\t" + std::to_string(p.reliable) + "\t" + std::to_string(p.rest) + "\n";
  }
  return out;
}

}  // namespace tritag
