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

namespace tritag {

// Decodes UTF-8; malformed byte sequences become U+FFFD, one replacement
// per offending byte, so decoding never fails.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t cp);

// Uppercase-letter test covering the scripts the tagger is exercised on:
// ASCII, Latin-1 supplement, Latin Extended-A, Greek, Cyrillic.
bool is_upper(char32_t cp);

// True when the first character of the word is an uppercase letter.
// Digits and punctuation never count as capitalized.
bool is_capitalized(std::string_view word);

// ASCII whitespace scan; safe on UTF-8 since continuation bytes are >= 0x80.
bool contains_whitespace(std::string_view s);

// 17 significant digits: enough to reproduce any double exactly on reload.
std::string format_g17(double v);

// Shortest decimal form that round-trips the value.
std::string format_shortest(double v);

// Cheap deterministic seed mixer for derived RNG streams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tritag
