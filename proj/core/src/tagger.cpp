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

#include "tritag/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

// Rank sequence of the path ending in state `idx` at `pos`, last tag first.
std::vector<std::int32_t> reversed_ranks(const TaggerModel& model,
                                         const TaggerModel::Lattice& lattice,
                                         std::size_t pos, std::int32_t idx) {
  std::vector<std::int32_t> ranks;
  ranks.reserve(pos + 1);
  for (std::size_t i = pos + 1; i-- > 0;) {
    const auto& position = lattice.positions[i];
    const auto& state = position.states[static_cast<std::size_t>(idx)];
    ranks.push_back(model.label_rank(position.cands[static_cast<std::size_t>(state.cand)].tag));
    idx = state.backptr;
  }
  return ranks;
}

// True when the path into `lhs` precedes the path into `rhs` in tag-label
// order, comparing from the start of the sentence. Both states live at `pos`
// and must carry equal scores; this is only called to settle exact ties.
bool path_precedes(const TaggerModel& model, const TaggerModel::Lattice& lattice,
                   std::size_t pos, std::int32_t lhs, std::int32_t rhs) {
  std::vector<std::int32_t> a = reversed_ranks(model, lattice, pos, lhs);
  std::vector<std::int32_t> b = reversed_ranks(model, lattice, pos, rhs);
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

double resolve_beam(double beam_theta, double fallback) {
  double beam = beam_theta < 0.0 ? fallback : beam_theta;
  if (beam != 0.0 && !(beam > 1.0)) {
    throw Error("beam threshold must be 0 (no pruning) or greater than 1");
  }
  return beam;
}

}  // namespace

double Quotient::value() const {
  if (infinite) return std::numeric_limits<double>::infinity();
  double v = std::exp(log_ratio);
  if (std::isinf(v)) return std::numeric_limits<double>::max();
  return v;
}

bool Quotient::reliable(double threshold) const {
  if (infinite) return true;
  if (std::isinf(threshold)) return false;
  return log_ratio > std::log(threshold);
}

TaggerModel TaggerModel::assemble(const TaggedCorpus& corpus, const TaggerConfig& config) {
  TaggerModel model;
  model.config_ = config;
  model.counts_ = count(corpus, config.capitalization);
  model.weights_ = deleted_interpolation(model.counts_, config.tie_break);
  model.suffix_ = SuffixModel::build(model.counts_, config.max_suffix,
                                     config.suffix_freq_threshold, config.theta_mode);
  model.finalize();
  return model;
}

TaggerModel TaggerModel::from_parts(NGramCounts counts, InterpolationWeights weights,
                                    SuffixModel suffix, TaggerConfig config) {
  TaggerModel model;
  model.counts_ = std::move(counts);
  model.weights_ = weights;
  model.suffix_ = std::move(suffix);
  model.config_ = config;
  model.finalize();
  return model;
}

void TaggerModel::finalize() {
  unigram_mle_.resize(counts_.states.size());
  for (StateId s = 0; s < static_cast<StateId>(counts_.states.size()); ++s) {
    unigram_mle_[static_cast<std::size_t>(s)] = mle_unigram(counts_, s);
  }
  std::vector<TagId> by_label(counts_.tags.size());
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(), [this](TagId a, TagId b) {
    return counts_.tags.label(a) < counts_.tags.label(b);
  });
  label_rank_.assign(counts_.tags.size(), 0);
  for (std::size_t rank = 0; rank < by_label.size(); ++rank) {
    label_rank_[static_cast<std::size_t>(by_label[rank])] = static_cast<std::int32_t>(rank);
  }
}

bool TaggerModel::known_word(std::string_view word) const {
  return counts_.word(word) != nullptr;
}

std::vector<Candidate> TaggerModel::candidates(std::string_view word) const {
  std::vector<Candidate> out;
  if (const WordEntry* entry = counts_.word(word)) {
    out.reserve(entry->tag_counts.size());
    for (const auto& [tag, freq] : entry->tag_counts) {
      double denom = static_cast<double>(counts_.tag_occurrences[static_cast<std::size_t>(tag)]);
      out.push_back({tag, static_cast<double>(freq) / denom});
    }
  } else {
    std::vector<double> dist = suffix_.tag_distribution(word);
    const std::vector<double>& prior = suffix_.root_distribution();
    for (TagId t = 0; t < static_cast<TagId>(dist.size()); ++t) {
      std::size_t i = static_cast<std::size_t>(t);
      if (prior[i] > 0.0 && dist[i] > 0.0) out.push_back({t, dist[i] / prior[i]});
    }
    std::size_t cap = static_cast<std::size_t>(config_.unknown_cap);
    if (config_.unknown_cap > 0 && out.size() > cap) {
      std::sort(out.begin(), out.end(), [this](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return label_rank(a.tag) < label_rank(b.tag);
      });
      out.resize(cap);
    }
  }
  std::sort(out.begin(), out.end(), [this](const Candidate& a, const Candidate& b) {
    return label_rank(a.tag) < label_rank(b.tag);
  });
  return out;
}

double TaggerModel::log_transition(StateId z, StateId a, StateId b) const {
  if (b < 0) return kNegInf;
  double p = weights_.lambda1 * unigram_mle_[static_cast<std::size_t>(b)];
  if (a >= 0) {
    std::int64_t fa = counts_.unigram(a);
    if (fa > 0) {
      std::int64_t fab = counts_.bigram(a, b);
      if (fab > 0) {
        p += weights_.lambda2 * (static_cast<double>(fab) / static_cast<double>(fa));
      }
    }
    if (z >= 0) {
      std::int64_t fza = counts_.bigram(z, a);
      if (fza > 0) {
        std::int64_t fzab = counts_.trigram(z, a, b);
        if (fzab > 0) {
          p += weights_.lambda3 * (static_cast<double>(fzab) / static_cast<double>(fza));
        }
      }
    }
  }
  return std::log(p);
}

double TaggerModel::log_sentence_end(StateId b) const {
  if (b < 0) return kNegInf;
  std::int64_t fb = counts_.unigram(b);
  std::int64_t fbe = counts_.bigram(b, StateSpace::kEos);
  if (fb <= 0 || fbe <= 0) return kNegInf;
  return std::log(static_cast<double>(fbe) / static_cast<double>(fb));
}

TaggerModel::Lattice TaggerModel::build_lattice(std::span<const std::string> words,
                                                double beam_theta) const {
  if (words.empty()) throw Error("cannot build a lattice for an empty sentence");
  bool prune = beam_theta > 1.0;
  double log_beam = prune ? std::log(beam_theta) : 0.0;

  Lattice lattice;
  lattice.positions.resize(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    LatticePosition& pos = lattice.positions[i];
    pos.word_known = known_word(words[i]);
    pos.cands = candidates(words[i]);
    if (pos.cands.empty()) {
      throw Error("no tag candidates for word \"" + words[i] + "\"");
    }
    bool cap = config_.capitalization && is_capitalized(words[i]);
    pos.log_emission.reserve(pos.cands.size());
    pos.cand_states.reserve(pos.cands.size());
    for (const Candidate& c : pos.cands) {
      pos.log_emission.push_back(std::log(c.score));
      std::optional<StateId> state = counts_.states.find(c.tag, cap);
      pos.cand_states.push_back(state ? *state : StateId{-1});
    }

    std::int32_t b_count = static_cast<std::int32_t>(pos.cands.size());
    if (i == 0) {
      // Without pruning the layout at position 0 is one state per candidate.
      pos.states.reserve(static_cast<std::size_t>(b_count));
      for (std::int32_t b = 0; b < b_count; ++b) {
        double delta = log_transition(StateSpace::kBos, StateSpace::kBos,
                                      pos.cand_states[static_cast<std::size_t>(b)]) +
                       pos.log_emission[static_cast<std::size_t>(b)];
        pos.states.push_back({-1, b, delta, -1});
      }
    } else {
      const LatticePosition& prev = lattice.positions[i - 1];
      std::vector<std::vector<std::int32_t>> buckets(prev.cands.size());
      for (std::size_t s = 0; s < prev.states.size(); ++s) {
        buckets[static_cast<std::size_t>(prev.states[s].cand)].push_back(
            static_cast<std::int32_t>(s));
      }
      // Without pruning every bucket is full, so the layout below is exactly
      // prev-candidate-major: state index = a * |cands| + b.
      pos.states.reserve(prev.cands.size() * pos.cands.size());
      for (std::int32_t a = 0; a < static_cast<std::int32_t>(prev.cands.size()); ++a) {
        const std::vector<std::int32_t>& bucket = buckets[static_cast<std::size_t>(a)];
        if (bucket.empty()) continue;
        StateId a_state = prev.cand_states[static_cast<std::size_t>(a)];
        for (std::int32_t b = 0; b < b_count; ++b) {
          StateId b_state = pos.cand_states[static_cast<std::size_t>(b)];
          double best = kNegInf;
          std::int32_t best_src = -1;
          for (std::int32_t src : bucket) {
            const LatticeState& s = prev.states[static_cast<std::size_t>(src)];
            StateId z_state = s.prev >= 0
                ? lattice.positions[i - 2].cand_states[static_cast<std::size_t>(s.prev)]
                : StateSpace::kBos;
            double v = s.log_delta + log_transition(z_state, a_state, b_state);
            if (best_src < 0 || v > best ||
                (v == best && path_precedes(*this, lattice, i - 1, src, best_src))) {
              best = v;
              best_src = src;
            }
          }
          double delta = best + pos.log_emission[static_cast<std::size_t>(b)];
          pos.states.push_back({a, b, delta, best_src});
        }
      }
    }

    if (prune) {
      double max_delta = kNegInf;
      for (const LatticeState& s : pos.states) max_delta = std::max(max_delta, s.log_delta);
      double floor = max_delta - log_beam;
      std::erase_if(pos.states, [floor](const LatticeState& s) { return s.log_delta < floor; });
    }
  }
  return lattice;
}

TaggedSentence TaggerModel::decode(std::span<const std::string> words, double beam_theta) const {
  double beam = resolve_beam(beam_theta, config_.beam_theta);
  Lattice lattice = build_lattice(words, beam);

  const LatticePosition& last = lattice.positions.back();
  double best = kNegInf;
  std::int32_t best_idx = -1;
  for (std::size_t s = 0; s < last.states.size(); ++s) {
    const LatticeState& state = last.states[s];
    double v = state.log_delta +
               log_sentence_end(last.cand_states[static_cast<std::size_t>(state.cand)]);
    std::int32_t idx = static_cast<std::int32_t>(s);
    if (best_idx < 0 || v > best ||
        (v == best && path_precedes(*this, lattice, words.size() - 1, idx, best_idx))) {
      best = v;
      best_idx = idx;
    }
  }

  TaggedSentence out;
  out.log_prob = best;
  out.tags.resize(words.size());
  out.known.resize(words.size());
  if (best == kNegInf) {
    // Every path has zero probability, so the per-state deltas carry no
    // usable preference: a prefix that looked best before the lattice went
    // dark is no better than any other. Take the first candidate everywhere,
    // which is the same label-order pick an exact tie resolves to.
    for (std::size_t i = 0; i < words.size(); ++i) {
      const LatticePosition& pos = lattice.positions[i];
      out.tags[i] = std::string(counts_.tags.label(pos.cands.front().tag));
      out.known[i] = pos.word_known;
    }
    return out;
  }
  std::int32_t idx = best_idx;
  for (std::size_t i = words.size(); i-- > 0;) {
    const LatticePosition& pos = lattice.positions[i];
    const LatticeState& state = pos.states[static_cast<std::size_t>(idx)];
    out.tags[i] = std::string(
        counts_.tags.label(pos.cands[static_cast<std::size_t>(state.cand)].tag));
    out.known[i] = pos.word_known;
    idx = state.backptr;
  }
  return out;
}

std::vector<Quotient> TaggerModel::reliability(std::span<const std::string> words,
                                               std::span<const std::string> tags) const {
  if (words.size() != tags.size()) {
    throw Error("reliability needs one tag per word");
  }
  Lattice lattice = build_lattice(words, 0.0);
  std::size_t len = words.size();

  // Backward scores over the unpruned lattice: beta[i][s] is the best score
  // of any completion (transitions, emissions, and the end-of-sentence
  // factor) after pair state s at position i.
  std::vector<std::vector<double>> beta(len);
  {
    const LatticePosition& last = lattice.positions[len - 1];
    beta[len - 1].resize(last.states.size());
    for (std::size_t s = 0; s < last.states.size(); ++s) {
      beta[len - 1][s] =
          log_sentence_end(last.cand_states[static_cast<std::size_t>(last.states[s].cand)]);
    }
  }
  for (std::size_t i = len - 1; i-- > 0;) {
    const LatticePosition& pos = lattice.positions[i];
    const LatticePosition& next = lattice.positions[i + 1];
    std::size_t next_width = next.cands.size();
    beta[i].assign(pos.states.size(), kNegInf);
    for (std::size_t s = 0; s < pos.states.size(); ++s) {
      const LatticeState& state = pos.states[s];
      StateId a_state = pos.cand_states[static_cast<std::size_t>(state.cand)];
      StateId z_state = state.prev >= 0
          ? lattice.positions[i - 1].cand_states[static_cast<std::size_t>(state.prev)]
          : StateSpace::kBos;
      double best = kNegInf;
      std::size_t base = static_cast<std::size_t>(state.cand) * next_width;
      for (std::size_t b = 0; b < next_width; ++b) {
        double v = log_transition(z_state, a_state, next.cand_states[b]) +
                   next.log_emission[b] + beta[i + 1][base + b];
        if (v > best) best = v;
      }
      beta[i][s] = best;
    }
  }

  double global = kNegInf;
  {
    const std::vector<double>& last_beta = beta[len - 1];
    const LatticePosition& last = lattice.positions[len - 1];
    for (std::size_t s = 0; s < last.states.size(); ++s) {
      global = std::max(global, last.states[s].log_delta + last_beta[s]);
    }
  }

  std::vector<Quotient> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const LatticePosition& pos = lattice.positions[i];
    std::vector<double> constrained(pos.cands.size(), kNegInf);
    for (std::size_t s = 0; s < pos.states.size(); ++s) {
      std::size_t cand = static_cast<std::size_t>(pos.states[s].cand);
      constrained[cand] = std::max(constrained[cand], pos.states[s].log_delta + beta[i][s]);
    }
    std::int32_t chosen = -1;
    for (std::size_t c = 0; c < pos.cands.size(); ++c) {
      if (counts_.tags.label(pos.cands[c].tag) == tags[i]) {
        chosen = static_cast<std::int32_t>(c);
        break;
      }
    }
    if (chosen < 0) {
      throw Error("tag \"" + tags[i] + "\" is not a candidate for word \"" + words[i] + "\"");
    }
    double alt = kNegInf;
    for (std::size_t c = 0; c < pos.cands.size(); ++c) {
      if (static_cast<std::int32_t>(c) == chosen) continue;
      alt = std::max(alt, constrained[c]);
    }
    if (global == kNegInf) {
      out[i] = {0.0, false};
    } else if (alt == kNegInf) {
      out[i] = {0.0, true};
    } else {
      out[i] = {global - alt, false};
    }
  }
  return out;
}

}  // namespace tritag
