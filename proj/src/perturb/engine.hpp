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

#include "common/rational.hpp"
#include "corpus/document.hpp"
#include "perturb/edit.hpp"
#include "perturb/rule.hpp"
#include "perturb/thread.hpp"

namespace mim::markov {
class Model;
}

namespace mim::perturb {

struct Match {
  std::size_t token_index = 0;  // body token, or hashtags-list entry when field == hashtags
  std::string token_text;
  Location location;
  Field field = Field::body;

  friend bool operator==(const Match&, const Match&) = default;
};

struct Rewrite {
  Thread thread;
  EditLog log;
};

// Applies factor to every counter independently, rounding half away from
// zero. Throws Error(validation) unless factor > 0.
corpus::Metrics scale_metrics(const corpus::Metrics& metrics, const Rational& factor);

// Copies the casing of the matched token onto the replacement when the
// match is Capitalized or ALL-CAPS; otherwise returns the replacement.
std::string adapt_case(std::string_view matched, std::string_view replacement);

bool predicate_holds(const Thread& thread, const PerturbationRule& rule);

// Occurrences of the rule's target (the anchor for word_insert) that the
// rule's scope and predicate make eligible, root before comments, in token
// order. metric_scale rules have no token target and yield nothing.
std::vector<Match> find_matches(const Thread& thread, const PerturbationRule& rule);

Rewrite apply_rule(const Thread& thread, const PerturbationRule& rule, const markov::Model* replacer = nullptr);

// Rules run in list order, each on the previous output. A rule asking for
// "&markov" without a replacer is a configuration error, raised before any
// rule runs.
Rewrite apply_ruleset(const Thread& thread, const RuleSet& rules, const markov::Model* replacer = nullptr);

struct FeedRewrite {
  corpus::Corpus docs;      // same order and length as the input
  std::vector<Rewrite> threads;
  ThreadIndex index;
};

// Groups a payload into threads, rewrites each one, and restores payload order.
FeedRewrite apply_ruleset_to_feed(const corpus::Corpus& docs, const RuleSet& rules,
                                  const markov::Model* replacer = nullptr);

}  // namespace mim::perturb
