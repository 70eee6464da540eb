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

#include <string>
#include <string_view>

#include "tritag/tagger.hpp"

namespace tritag {

// First line of every model file.
inline constexpr std::string_view kModelMagic = "tnt-model 1";

// Text form of a trained model. Sections appear in a fixed order
// (config, lexicon, ngrams, suffix-lower, suffix-upper, end), every list is
// sorted by label or word, counts are integers, and real-valued parameters
// are printed with enough digits to round-trip exactly, so serializing the
// same model always yields the same bytes.
//
//   tnt-model 1
//   #SECTION config          key/value lines, fixed key order
//   #SECTION lexicon         word TAB total (TAB tag TAB count)+
//   #SECTION ngrams          frequency tree over contextual states:
//                            "a f", "\t b f(a,b)", "\t\t c f(a,b,c)";
//                            boundary states print as <BOS> and <EOS>,
//                            capitalized composites with a '+' prefix
//   #SECTION suffix-lower    suffix TAB tag TAB count, sorted by suffix
//   #SECTION suffix-upper    then tag; the empty suffix prints as \e and
//                            a literal leading backslash doubles
//   #SECTION end             marker so every truncation is detectable
std::string serialize_model(const TaggerModel& model);

// Parses what serialize_model produced. Derived quantities (token total,
// sentence count, per-tag occurrence totals, the unconditioned tag
// distribution) are rebuilt from the sections rather than stored. Raises
// ModelError with a 1-based line number on malformed input.
TaggerModel parse_model(std::string_view text);

// File wrappers; both raise ModelError on I/O failure.
void save_model(const TaggerModel& model, const std::string& path);
TaggerModel load_model(const std::string& path);

}  // namespace tritag
