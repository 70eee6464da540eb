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

#include <stdexcept>

namespace tritag {

// Base class for every error the library raises on bad input or misuse.
// The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tagged corpus or untagged input text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Unusable training material (empty corpus, degenerate tagset, ...).
class TrainError : public Error {
 public:
  using Error::Error;
};

// Unreadable, truncated, or version-incompatible model files.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Evaluation harness misuse (misaligned gold data, impossible budgets, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tritag
