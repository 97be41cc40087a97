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
#include <span>
#include <string>
#include <vector>

namespace mim::detect {

enum class AlignOp { substitute, erase, insert };

// One step of an edit script. original_index is the position in the
// original list (for insert: the number of original tokens before the
// insertion point); delivered_index likewise for the delivered list.
struct AlignStep {
  AlignOp op = AlignOp::substitute;
  std::size_t original_index = 0;
  std::size_t delivered_index = 0;

  friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

// Minimal unit-cost edit script turning original into delivered, listed
// left to right. Among minimal scripts a substitution wins over a
// delete/insert pair and earlier edits win over later ones.
std::vector<AlignStep> align(std::span<const std::string> original, std::span<const std::string> delivered);

// Levenshtein distance over whole tokens; equals align(...).size().
std::size_t edit_distance(std::span<const std::string> original, std::span<const std::string> delivered);

// Runs a script forward. Used to check recovered scripts.
std::vector<std::string> apply_script(std::span<const std::string> original, std::span<const std::string> delivered,
                                      std::span<const AlignStep> script);

}  // namespace mim::detect
