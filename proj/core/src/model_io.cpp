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

#include "tritag/model_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "tritag/error.hpp"
#include "tritag/text.hpp"

namespace tritag {

namespace {

constexpr std::uint64_t kStateMask = (std::uint64_t{1} << 21) - 1;

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ModelError("model file line " + std::to_string(line_no) + ": " + what);
}

void append_kv(std::string& out, std::string_view key, std::string_view value) {
  out.append(key);
  out.push_back(' ');
  out.append(value);
  out.push_back('\n');
}

std::string escape_suffix(const std::string& suffix) {
  if (suffix.empty()) return "\\e";
  if (suffix.front() == '\\') return "\\" + suffix;
  return suffix;
}

std::string unescape_suffix(std::string_view field, std::size_t line_no) {
  if (field == "\\e") return "";
  if (!field.empty() && field.front() == '\\') {
    if (field.size() < 2 || field[1] != '\\') {
      fail(line_no, "bad suffix escape");
    }
    return std::string(field.substr(1));
  }
  if (field.empty()) fail(line_no, "empty suffix field");
  return std::string(field);
}

// Tag counts of one node or word entry as (label, count), sorted by label so
// output does not depend on interning order.
std::vector<std::pair<std::string_view, std::int64_t>> by_label(
    const TagIndex& tags,
    const std::vector<std::pair<TagId, std::int64_t>>& counts) {
  std::vector<std::pair<std::string_view, std::int64_t>> out;
  out.reserve(counts.size());
  for (const auto& [tag, count] : counts) {
    out.emplace_back(tags.label(tag), count);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_trie(std::string& out, const SuffixTrie& trie, const TagIndex& tags) {
  // One line per (node, tag) pair, sorted by suffix then tag label.  Reload
  // order is irrelevant (insert_suffix touches exactly the addressed node),
  // so plain sorting gives byte determinism.
  std::vector<std::tuple<std::string, std::string_view, std::int64_t>> rows;
  trie.visit([&](const std::string& suffix, const SuffixTrie::Node& node) {
    for (const auto& [label, count] : by_label(tags, node.tag_counts)) {
      rows.emplace_back(suffix, label, count);
    }
  });
  std::sort(rows.begin(), rows.end());
  for (const auto& [suffix, label, count] : rows) {
    out.append(escape_suffix(suffix));
    out.push_back('\t');
    out.append(label);
    out.push_back('\t');
    out.append(std::to_string(count));
    out.push_back('\n');
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::int64_t parse_count(std::string_view field, std::size_t line_no) {
  if (field.empty()) fail(line_no, "missing count");
  std::int64_t value = 0;
  for (char ch : field) {
    if (ch < '0' || ch > '9') fail(line_no, "bad count");
    if (value > (std::numeric_limits<std::int64_t>::max() - (ch - '0')) / 10) {
      fail(line_no, "count out of range");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

double parse_real(std::string_view field, std::size_t line_no) {
  std::string tmp(field);
  char* end = nullptr;
  double value = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty()) {
    fail(line_no, "bad real number");
  }
  return value;
}

// Cursor over pre-split lines with 1-based numbering.
struct Reader {
  std::vector<std::string_view> lines;
  std::size_t next = 0;

  bool done() const { return next >= lines.size(); }
  std::size_t line_no() const { return next; }  // of the line just taken
  std::optional<std::string_view> peek() const {
    if (done()) return std::nullopt;
    return lines[next];
  }
  std::string_view take() { return lines[next++]; }
  std::string_view expect(std::string_view literal) {
    if (done()) fail(lines.size() + 1, "expected \"" + std::string(literal) + "\"");
    std::string_view line = take();
    if (line != literal) fail(next, "expected \"" + std::string(literal) + "\"");
    return line;
  }
  std::string_view expect_kv(std::string_view key) {
    if (done()) fail(lines.size() + 1, "expected config key " + std::string(key));
    std::string_view line = take();
    if (line.size() <= key.size() || line.substr(0, key.size()) != key ||
        line[key.size()] != ' ') {
      fail(next, "expected config key " + std::string(key));
    }
    return line.substr(key.size() + 1);
  }
};

StateId resolve_state(NGramCounts& counts, std::string_view label,
                      std::size_t line_no) {
  if (label == kBosLabel) return StateSpace::kBos;
  if (label == kEosLabel) return StateSpace::kEos;
  bool cap = false;
  if (!label.empty() && label.front() == '+') {
    cap = true;
    label.remove_prefix(1);
  }
  std::optional<TagId> tag = counts.tags.find(label);
  if (!tag) fail(line_no, "state label outside the tagset");
  StateId s = counts.states.intern(*tag, cap);
  if (counts.state_unigrams.size() < counts.states.size()) {
    counts.state_unigrams.resize(counts.states.size(), 0);
  }
  return s;
}

}  // namespace

std::string serialize_model(const TaggerModel& model) {
  const NGramCounts& c = model.counts();
  const TaggerConfig& cfg = model.config();
  const InterpolationWeights& w = model.weights();
  const SuffixModel& sm = model.suffix_model();

  std::vector<std::string_view> sorted_tags;
  sorted_tags.reserve(c.tags.size());
  for (TagId t = 0; t < static_cast<TagId>(c.tags.size()); ++t) {
    const std::string& label = c.tags.label(t);
    if (label.front() == '+') {
      throw ModelError("tag label \"" + label +
                       "\" cannot be serialized: '+' marks capitalized states");
    }
    sorted_tags.push_back(label);
  }
  std::sort(sorted_tags.begin(), sorted_tags.end());

  std::string out;
  out.reserve(std::size_t{1} << 20);
  out.append(kModelMagic);
  out.push_back('\n');

  out.append("#SECTION config\n");
  append_kv(out, "capitalization", cfg.capitalization ? "1" : "0");
  append_kv(out, "beam_theta", format_g17(cfg.beam_theta));
  append_kv(out, "max_suffix", std::to_string(cfg.max_suffix));
  append_kv(out, "suffix_freq_threshold", std::to_string(cfg.suffix_freq_threshold));
  append_kv(out, "unknown_cap", std::to_string(cfg.unknown_cap));
  append_kv(out, "tie_break",
            cfg.tie_break == TieBreak::kHigherOrder ? "higher" : "lower");
  append_kv(out, "theta_mode",
            cfg.theta_mode == ThetaMode::kPrinted ? "printed" : "sqrt");
  append_kv(out, "lambda1", format_g17(w.lambda1));
  append_kv(out, "lambda2", format_g17(w.lambda2));
  append_kv(out, "lambda3", format_g17(w.lambda3));
  append_kv(out, "suffix_theta", format_g17(sm.theta()));
  out.append("tagset");
  for (std::string_view label : sorted_tags) {
    out.push_back(' ');
    out.append(label);
  }
  out.push_back('\n');

  out.append("#SECTION lexicon\n");
  {
    std::vector<std::pair<std::string_view, const WordEntry*>> words;
    words.reserve(c.lexicon.size());
    for (const auto& [word, entry] : c.lexicon) words.emplace_back(word, &entry);
    std::sort(words.begin(), words.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [word, entry] : words) {
      out.append(word);
      out.push_back('\t');
      out.append(std::to_string(entry->total));
      for (const auto& [label, count] : by_label(c.tags, entry->tag_counts)) {
        out.push_back('\t');
        out.append(label);
        out.push_back('\t');
        out.append(std::to_string(count));
      }
      out.push_back('\n');
    }
  }

  out.append("#SECTION ngrams\n");
  {
    std::size_t n_states = c.states.size();
    std::vector<std::string> labels(n_states);
    for (StateId s = 0; s < static_cast<StateId>(n_states); ++s) {
      labels[static_cast<std::size_t>(s)] = state_label(c, s);
    }
    std::vector<StateId> order(n_states);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&labels](StateId a, StateId b) {
      return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
    });

    auto label_less = [&labels](const std::pair<StateId, std::int64_t>& a,
                                const std::pair<StateId, std::int64_t>& b) {
      return labels[static_cast<std::size_t>(a.first)] <
             labels[static_cast<std::size_t>(b.first)];
    };
    std::vector<std::vector<std::pair<StateId, std::int64_t>>> big(n_states);
    for (const auto& [key, count] : c.bigrams) {
      StateId a = static_cast<StateId>(key >> 21);
      StateId b = static_cast<StateId>(key & kStateMask);
      big[static_cast<std::size_t>(a)].emplace_back(b, count);
    }
    std::unordered_map<std::uint64_t, std::vector<std::pair<StateId, std::int64_t>>> tri;
    for (const auto& [key, count] : c.trigrams) {
      auto [z, a, b] = NGramCounts::unpack3(key);
      tri[NGramCounts::pack2(z, a)].emplace_back(b, count);
    }
    for (auto& children : big) std::sort(children.begin(), children.end(), label_less);
    for (auto& [key, children] : tri) std::sort(children.begin(), children.end(), label_less);

    for (StateId a : order) {
      out.append(labels[static_cast<std::size_t>(a)]);
      out.push_back('\t');
      out.append(std::to_string(c.unigram(a)));
      out.push_back('\n');
      for (const auto& [b, bcount] : big[static_cast<std::size_t>(a)]) {
        out.push_back('\t');
        out.append(labels[static_cast<std::size_t>(b)]);
        out.push_back('\t');
        out.append(std::to_string(bcount));
        out.push_back('\n');
        auto it = tri.find(NGramCounts::pack2(a, b));
        if (it == tri.end()) continue;
        for (const auto& [d, tcount] : it->second) {
          out.append("\t\t");
          out.append(labels[static_cast<std::size_t>(d)]);
          out.push_back('\t');
          out.append(std::to_string(tcount));
          out.push_back('\n');
        }
      }
    }
  }

  out.append("#SECTION suffix-lower\n");
  write_trie(out, sm.lower(), c.tags);
  out.append("#SECTION suffix-upper\n");
  write_trie(out, sm.upper(), c.tags);
  // End marker: without it, a file cut at a line boundary inside the last
  // section would parse as a smaller but well-formed model.
  out.append("#SECTION end\n");
  return out;
}

TaggerModel parse_model(std::string_view text) {
  Reader reader{split_lines(text)};
  for (std::size_t i = 0; i < reader.lines.size(); ++i) {
    if (!reader.lines[i].empty() && reader.lines[i].back() == '\r') {
      fail(i + 1, "carriage return in model file");
    }
  }
  reader.expect(kModelMagic);
  reader.expect("#SECTION config");

  TaggerConfig cfg;
  {
    std::string_view v = reader.expect_kv("capitalization");
    if (v == "1") {
      cfg.capitalization = true;
    } else if (v == "0") {
      cfg.capitalization = false;
    } else {
      fail(reader.line_no(), "capitalization must be 0 or 1");
    }
  }
  cfg.beam_theta = parse_real(reader.expect_kv("beam_theta"), reader.line_no());
  cfg.max_suffix =
      static_cast<int>(parse_count(reader.expect_kv("max_suffix"), reader.line_no()));
  cfg.suffix_freq_threshold =
      parse_count(reader.expect_kv("suffix_freq_threshold"), reader.line_no());
  cfg.unknown_cap =
      static_cast<int>(parse_count(reader.expect_kv("unknown_cap"), reader.line_no()));
  {
    std::string_view v = reader.expect_kv("tie_break");
    if (v == "higher") {
      cfg.tie_break = TieBreak::kHigherOrder;
    } else if (v == "lower") {
      cfg.tie_break = TieBreak::kLowerOrder;
    } else {
      fail(reader.line_no(), "tie_break must be higher or lower");
    }
  }
  {
    std::string_view v = reader.expect_kv("theta_mode");
    if (v == "printed") {
      cfg.theta_mode = ThetaMode::kPrinted;
    } else if (v == "sqrt") {
      cfg.theta_mode = ThetaMode::kSqrt;
    } else {
      fail(reader.line_no(), "theta_mode must be printed or sqrt");
    }
  }
  InterpolationWeights weights;
  weights.lambda1 = parse_real(reader.expect_kv("lambda1"), reader.line_no());
  weights.lambda2 = parse_real(reader.expect_kv("lambda2"), reader.line_no());
  weights.lambda3 = parse_real(reader.expect_kv("lambda3"), reader.line_no());
  double suffix_theta_value =
      parse_real(reader.expect_kv("suffix_theta"), reader.line_no());

  NGramCounts counts;
  counts.composite_caps = cfg.capitalization;
  {
    std::string_view v = reader.expect_kv("tagset");
    std::size_t pos = 0;
    while (pos < v.size()) {
      std::size_t space = v.find(' ', pos);
      std::string_view label =
          space == std::string_view::npos ? v.substr(pos) : v.substr(pos, space - pos);
      if (label.empty()) fail(reader.line_no(), "empty tag label in tagset");
      if (counts.tags.find(label)) fail(reader.line_no(), "duplicate tag in tagset");
      counts.tags.intern(label);
      if (space == std::string_view::npos) break;
      pos = space + 1;
    }
    if (counts.tags.size() < 2) fail(reader.line_no(), "tagset needs at least 2 tags");
  }
  counts.tag_occurrences.assign(counts.tags.size(), 0);
  counts.state_unigrams.assign(counts.states.size(), 0);

  reader.expect("#SECTION lexicon");
  while (!reader.done() && !reader.peek()->starts_with("#SECTION")) {
    std::string_view line = reader.take();
    std::size_t no = reader.line_no();
    std::vector<std::string_view> fields = split_tabs(line);
    if (fields.size() < 4 || fields.size() % 2 != 0) {
      fail(no, "lexicon line needs word, total, and tag/count pairs");
    }
    if (fields[0].empty()) fail(no, "empty word");
    auto [it, inserted] = counts.lexicon.try_emplace(std::string(fields[0]));
    if (!inserted) fail(no, "duplicate lexicon word");
    WordEntry& entry = it->second;
    std::int64_t declared_total = parse_count(fields[1], no);
    std::int64_t sum = 0;
    for (std::size_t f = 2; f + 1 < fields.size(); f += 2) {
      std::optional<TagId> tag = counts.tags.find(fields[f]);
      if (!tag) fail(no, "lexicon tag outside the tagset");
      std::int64_t count = parse_count(fields[f + 1], no);
      if (count <= 0) fail(no, "lexicon count must be positive");
      if (entry.count(*tag) != 0) fail(no, "duplicate tag on lexicon line");
      entry.add(*tag, count);
      sum += count;
      counts.tag_occurrences[static_cast<std::size_t>(*tag)] += count;
      counts.total_tokens += count;
    }
    if (sum != declared_total) fail(no, "lexicon total does not match its counts");
  }

  reader.expect("#SECTION ngrams");
  StateId level0 = -1;
  StateId level1 = -1;
  while (!reader.done() && !reader.peek()->starts_with("#SECTION")) {
    std::string_view line = reader.take();
    std::size_t no = reader.line_no();
    int depth = 0;
    while (depth < 2 && static_cast<std::size_t>(depth) < line.size() &&
           line[static_cast<std::size_t>(depth)] == '\t') {
      ++depth;
    }
    std::vector<std::string_view> fields =
        split_tabs(line.substr(static_cast<std::size_t>(depth)));
    if (fields.size() != 2) fail(no, "frequency line needs a label and a count");
    StateId s = resolve_state(counts, fields[0], no);
    std::int64_t count = parse_count(fields[1], no);
    if (count <= 0) fail(no, "frequency must be positive");
    if (depth == 0) {
      if (counts.state_unigrams[static_cast<std::size_t>(s)] != 0) {
        fail(no, "duplicate state block");
      }
      counts.state_unigrams[static_cast<std::size_t>(s)] = count;
      level0 = s;
      level1 = -1;
    } else if (depth == 1) {
      if (level0 < 0) fail(no, "bigram line before any state block");
      auto [it, inserted] = counts.bigrams.try_emplace(NGramCounts::pack2(level0, s), count);
      if (!inserted) fail(no, "duplicate bigram");
      level1 = s;
    } else {
      if (level1 < 0) fail(no, "trigram line before any bigram line");
      auto [it, inserted] =
          counts.trigrams.try_emplace(NGramCounts::pack3(level0, level1, s), count);
      if (!inserted) fail(no, "duplicate trigram");
    }
  }
  for (StateId s = 0; s < static_cast<StateId>(counts.states.size()); ++s) {
    if (counts.unigram(s) <= 0) {
      throw ModelError("state " + state_label(counts, s) + " has no unigram count");
    }
  }
  counts.sentence_count = counts.unigram(StateSpace::kEos);
  if (counts.unigram(StateSpace::kBos) != 2 * counts.sentence_count) {
    throw ModelError("inconsistent boundary counts");
  }

  auto read_trie = [&](SuffixTrie& trie) {
    while (!reader.done() && !reader.peek()->starts_with("#SECTION")) {
      std::string_view line = reader.take();
      std::size_t no = reader.line_no();
      std::vector<std::string_view> fields = split_tabs(line);
      if (fields.size() != 3) fail(no, "suffix line needs suffix, tag, count");
      std::string suffix = unescape_suffix(fields[0], no);
      std::optional<TagId> tag = counts.tags.find(fields[1]);
      if (!tag) fail(no, "suffix tag outside the tagset");
      std::int64_t count = parse_count(fields[2], no);
      if (count <= 0) fail(no, "suffix count must be positive");
      trie.insert_suffix(decode_utf8(suffix), *tag, count);
    }
  };
  SuffixTrie lower;
  SuffixTrie upper;
  reader.expect("#SECTION suffix-lower");
  read_trie(lower);
  reader.expect("#SECTION suffix-upper");
  read_trie(upper);
  reader.expect("#SECTION end");
  if (!reader.done()) fail(reader.next + 1, "trailing content");

  if (counts.total_tokens <= 0) throw ModelError("model has an empty lexicon");
  std::vector<double> root_distribution(counts.tags.size());
  for (std::size_t t = 0; t < counts.tags.size(); ++t) {
    root_distribution[t] = static_cast<double>(counts.tag_occurrences[t]) /
                           static_cast<double>(counts.total_tokens);
  }
  SuffixModel suffix = SuffixModel::from_parts(
      std::move(lower), std::move(upper), std::move(root_distribution),
      suffix_theta_value, cfg.max_suffix, cfg.suffix_freq_threshold);
  return TaggerModel::from_parts(std::move(counts), weights, std::move(suffix), cfg);
}

void save_model(const TaggerModel& model, const std::string& path) {
  std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot open \"" + path + "\" for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw ModelError("failed to write \"" + path + "\"");
}

TaggerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw ModelError("failed to read \"" + path + "\"");
  return parse_model(text);
}

}  // namespace tritag
