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

#include "detect/align.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace mim::detect {

namespace {

// Cost of a script tail: total edits, then inserts. For a fixed edit count
// fewer inserts means more substitutions, so minimising this pair prefers
// substitutions over delete/insert pairs.
struct Key {
  std::size_t edits = 0;
  std::size_t inserts = 0;

  Key plus(std::size_t e, std::size_t ins) const { return {edits + e, inserts + ins}; }
  friend bool operator==(const Key&, const Key&) = default;
  friend bool operator<(const Key& x, const Key& y) {
    return x.edits != y.edits ? x.edits < y.edits : x.inserts < y.inserts;
  }
};

// at(i, j): best key for turning original[i..] into delivered[j..].
class SuffixTable {
 public:
  SuffixTable(std::span<const std::string> a, std::span<const std::string> b)
      : rows_(a.size() + 1), cols_(b.size() + 1), cells_(rows_ * cols_) {
    for (std::size_t i = rows_; i-- > 0;) {
      for (std::size_t j = cols_; j-- > 0;) {
        Key best;
        if (i == a.size()) {
          best = {b.size() - j, b.size() - j};
        } else if (j == b.size()) {
          best = {a.size() - i, 0};
        } else {
          best = std::min(at(i + 1, j).plus(1, 0), at(i, j + 1).plus(1, 1));
          best = std::min(best, at(i + 1, j + 1).plus(a[i] == b[j] ? 0 : 1, 0));
        }
        cells_[i * cols_ + j] = best;
      }
    }
  }

  const Key& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Key> cells_;
};

}  // namespace

std::vector<AlignStep> align(std::span<const std::string> a, std::span<const std::string> b) {
  const SuffixTable cost(a, b);
  std::vector<AlignStep> script;
  std::size_t i = 0;
  std::size_t j = 0;
  // Walk forward taking the first optimal move in the order substitute,
  // delete, insert, match, which puts edits as far left as possible.
  while (i < a.size() || j < b.size()) {
    const Key here = cost.at(i, j);
    const bool can_diag = i < a.size() && j < b.size();
    const bool equal = can_diag && a[i] == b[j];
    if (can_diag && !equal && cost.at(i + 1, j + 1).plus(1, 0) == here) {
      script.push_back({AlignOp::substitute, i, j});
      ++i;
      ++j;
    } else if (i < a.size() && cost.at(i + 1, j).plus(1, 0) == here) {
      script.push_back({AlignOp::erase, i, j});
      ++i;
    } else if (j < b.size() && cost.at(i, j + 1).plus(1, 1) == here) {
      script.push_back({AlignOp::insert, i, j});
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return script;
}

std::size_t edit_distance(std::span<const std::string> a, std::span<const std::string> b) {
  return SuffixTable(a, b).at(0, 0).edits;
}

std::vector<std::string> apply_script(std::span<const std::string> a, std::span<const std::string> b,
                                      std::span<const AlignStep> script) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto copy_until = [&](std::size_t stop) {
    while (i < stop) out.push_back(a[i++]);
  };
  for (const AlignStep& step : script) {
    copy_until(step.original_index);
    switch (step.op) {
      case AlignOp::substitute:
        out.push_back(b[step.delivered_index]);
        ++i;
        break;
      case AlignOp::erase: ++i; break;
      case AlignOp::insert: out.push_back(b[step.delivered_index]); break;
    }
  }
  copy_until(a.size());
  return out;
}

}  // namespace mim::detect
