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

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "corpus/document.hpp"

namespace mim::markov {

// Order-1 chain over case-folded word/hashtag/number tokens. Immutable once
// trained; every query is const and safe to call concurrently.
class Model {
 public:
  using Row = std::map<std::string, std::uint64_t, std::less<>>;
  using Counts = std::map<std::string, Row, std::less<>>;

  // Counts consecutive content-token bigrams within each body. Throws
  // Error(validation) for an empty corpus, negative smoothing, or when no
  // body contains a single content token.
  static Model train(const corpus::Corpus& corpus, double smoothing = 0.0);

  static Model from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  int order() const noexcept { return 1; }
  double smoothing() const noexcept { return smoothing_; }
  const std::set<std::string, std::less<>>& vocab() const noexcept { return vocab_; }
  const Counts& counts() const noexcept { return counts_; }

  std::uint64_t count(std::string_view prev, std::string_view next) const;
  std::uint64_t total(std::string_view prev) const;

  // (count + k) / (total + k * |vocab|); 0 when prev is unseen and k = 0.
  double transition_prob(std::string_view prev, std::string_view next) const;

  // Highest-probability candidate after prev; ties go to the
  // lexicographically smallest text. The seed is accepted for interface
  // stability and does not influence the result.
  std::string choose_replacement(std::string_view prev, std::span<const std::string> candidates,
                                 std::uint64_t seed = 0) const;

 private:
  Model() = default;
  void check_invariants() const;

  double smoothing_ = 0.0;
  std::set<std::string, std::less<>> vocab_;
  Counts counts_;
  std::map<std::string, std::uint64_t, std::less<>> totals_;
};

}  // namespace mim::markov
