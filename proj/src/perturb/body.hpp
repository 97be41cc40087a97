// Copyright 2026 The mimkit Authors
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
#include <vector>

#include "corpus/document.hpp"

namespace mim::perturb {

// A body split into tokens and the whitespace around them:
// gaps[0] tok[0] gaps[1] tok[1] ... tok[n-1] gaps[n].
struct LexedBody {
  std::vector<corpus::Token> tokens;
  std::vector<std::string> gaps;

  static LexedBody lex(std::string_view body);
  std::string render() const;
  std::size_t size() const noexcept { return tokens.size(); }
};

// Whitespace left behind when token i is removed: a single space between two
// tokens that were both space-separated from it, nothing otherwise; a leading
// or trailing token keeps the outer gap.
std::string joined_gap(const LexedBody& body, std::size_t index);

// Primitive edits; each returns the rendered body. Indices must be valid.
std::string replace_token(const LexedBody& body, std::size_t index, std::string_view text,
                          const std::string* gap_before = nullptr, const std::string* gap_after = nullptr);
std::string erase_token(const LexedBody& body, std::size_t index, std::string_view gap);
// The new token lands at position index (0..size), splitting gaps[index].
std::string insert_token(const LexedBody& body, std::size_t index, std::string_view text, std::string_view gap_before,
                         std::string_view gap_after);

}  // namespace mim::perturb
