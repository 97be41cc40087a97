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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "common/rational.hpp"

namespace mim::perturb {

enum class RuleKind { word_swap, word_remove, word_insert, hashtag_swap, metric_scale };
enum class Scope { all, first, comments_only };
enum class Side { before, after };

// Replacement value that asks the Markov replacer for the token.
inline constexpr std::string_view kMarkovReplacement = "&markov";

struct RulePredicate {
  std::optional<std::vector<std::string>> hashtag_any;
  std::optional<std::string> author_is;

  friend bool operator==(const RulePredicate&, const RulePredicate&) = default;
};

struct PerturbationRule {
  RuleKind kind = RuleKind::word_swap;
  std::string match;
  std::string replacement;
  std::string insert_token;
  std::string anchor;
  Side side = Side::before;
  Rational factor{1, 1};
  Scope scope = Scope::all;
  bool case_sensitive = true;
  std::optional<RulePredicate> predicate;
  // Only for word_swap with replacement "&markov"; empty means the whole
  // model vocabulary.
  std::vector<std::string> candidates;

  bool uses_markov() const noexcept { return kind == RuleKind::word_swap && replacement == kMarkovReplacement; }

  friend bool operator==(const PerturbationRule&, const PerturbationRule&) = default;
};

using RuleSet = std::vector<PerturbationRule>;

const char* to_string(RuleKind kind) noexcept;
const char* to_string(Scope scope) noexcept;
const char* to_string(Side side) noexcept;

// Throws Error(validation) naming the offending field.
void validate(const PerturbationRule& rule);

PerturbationRule rule_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PerturbationRule& rule);

// {"rules": [...]} with an optional top-level "description".
RuleSet ruleset_from_json(const nlohmann::json& j);
RuleSet parse_ruleset(std::string_view text);
RuleSet load_ruleset(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const RuleSet& rules);

}  // namespace mim::perturb
