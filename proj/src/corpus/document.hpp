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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mim::corpus {

struct Metrics {
  std::int64_t replies = 0;
  std::int64_t retweets = 0;
  std::int64_t likes = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// One rendered tweet. Comments are separate documents pointing at their
// parent through parent_id (one level of threading).
struct TweetDocument {
  std::string id;
  std::string author;
  bool verified = false;
  std::string body;
  std::vector<std::string> hashtags;
  Metrics metrics;
  std::optional<std::string> parent_id;

  bool is_comment() const noexcept { return parent_id.has_value(); }

  friend bool operator==(const TweetDocument&, const TweetDocument&) = default;
};

using Corpus = std::vector<TweetDocument>;

enum class TokenKind { word, hashtag, mention, number, punctuation };

const char* to_string(TokenKind kind) noexcept;

struct Token {
  std::string text;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  TokenKind kind = TokenKind::word;

  friend bool operator==(const Token&, const Token&) = default;
};

}  // namespace mim::corpus
