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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus/document.hpp"

namespace mim::perturb {

// What a reader sees on one page: the rendered document and the comments
// replying to it, in corpus order.
struct Thread {
  corpus::TweetDocument root;
  std::vector<corpus::TweetDocument> comments;

  std::size_t size() const noexcept { return 1 + comments.size(); }
  friend bool operator==(const Thread&, const Thread&) = default;
};

// Where an edit or match lives inside a thread.
struct Location {
  enum class Kind { root, comment };
  Kind kind = Kind::root;
  std::string comment_id;  // empty for root

  static Location root() { return {}; }
  static Location comment(std::string id) { return {Kind::comment, std::move(id)}; }
  bool is_root() const noexcept { return kind == Kind::root; }

  friend bool operator==(const Location&, const Location&) = default;
};

// Groups a flat payload into threads. A document whose parent_id names a
// root document present in the payload becomes one of its comments;
// everything else roots its own thread. Threads follow the order of their
// roots in the payload.
struct ThreadIndex {
  std::vector<Thread> threads;
  // For every input position: (thread index, 0 for the root or 1 + comment index).
  std::vector<std::pair<std::size_t, std::size_t>> positions;
};

ThreadIndex group_threads(const corpus::Corpus& docs);

// Inverse of group_threads for a thread list with the same shape.
corpus::Corpus flatten(const ThreadIndex& index, const std::vector<Thread>& threads);

corpus::TweetDocument& locate(Thread& thread, const Location& where);
const corpus::TweetDocument& locate(const Thread& thread, const Location& where);

}  // namespace mim::perturb
