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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus/document.hpp"

namespace mim::corpus {

// Offset of the first byte that does not start a valid UTF-8 sequence, or
// nullopt for valid input. Overlong forms and surrogates are rejected.
std::optional<std::size_t> find_invalid_utf8(std::string_view text) noexcept;

// Splits a body into word / hashtag / mention / number / punctuation tokens.
// Whitespace is skipped; every other byte belongs to exactly one token, so
// the body can be rebuilt from the token spans and the gaps between them.
// Throws Error(validation) on invalid UTF-8.
std::vector<Token> tokenize(std::string_view body);

// ASCII lower-casing; non-ASCII bytes are left untouched.
std::string fold_case(std::string_view text);

// Word, hashtag and number tokens are the content-bearing ones that the
// rewriting rules and the Markov model look at.
inline bool is_content(TokenKind kind) noexcept {
  return kind == TokenKind::word || kind == TokenKind::hashtag || kind == TokenKind::number;
}

}  // namespace mim::corpus
