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
#include <vector>

#include <json.hpp>

#include "common/rational.hpp"
#include "corpus/document.hpp"
#include "detect/lexicon.hpp"
#include "perturb/edit.hpp"

namespace mim::detect {

struct HashtagFlip {
  std::string original;
  std::string delivered;

  friend bool operator==(const HashtagFlip&, const HashtagFlip&) = default;
};

struct DetectionReport {
  // Recovered edits in application order: body edits right to left, then
  // hashtag-list edits right to left, then the metric change.
  perturb::EditLog edits;
  std::optional<Rational> metric_factor;
  std::vector<HashtagFlip> hashtag_flips;
  bool valence_inversion = false;
  double severity = 0.0;
};

// Largest search bound for numerator and denominator.
inline constexpr std::int64_t kMaxFactorTerm = 64;

// A single p/q (p, q <= 64) that maps every counter of original onto
// delivered under half-away rounding. Smaller q wins, then inflation
// (p > q) before deflation, then smaller p. Absent when the metrics are
// equal or no such factor exists.
std::optional<Rational> estimate_metric_factor(const corpus::Metrics& original, const corpus::Metrics& delivered);

// Token-level edits that turn one body into another, with the whitespace
// needed for a byte-exact replay.
perturb::EditLog recover_body_edits(const std::string& original, const std::string& delivered,
                                    const perturb::Location& where = perturb::Location::root());

perturb::EditLog recover_hashtag_edits(const std::vector<std::string>& original,
                                       const std::vector<std::string>& delivered,
                                       const perturb::Location& where = perturb::Location::root());

// Flips are unique (original, delivered) pairs from hashtag substitutions,
// whether in the body or the hashtags list, in order of appearance.
std::vector<HashtagFlip> hashtag_flips(const perturb::EditLog& edits);

// Valence inversion: a substitution onto the token's lexicon opposite, or
// an inserted/deleted negator. Severity is
//   min(1, 0.25 [inversion] + 0.25 [factor] + 0.25 [flips] + 0.25 min(1, |edits| / 4)).
DetectionReport classify(perturb::EditLog edits, std::vector<HashtagFlip> flips,
                         std::optional<Rational> metric_factor, const ValenceLexicon& lexicon);

// Compares an authentic document with what was delivered. The two must be
// renderings of the same tweet (same id, author, verification, parent).
DetectionReport detect(const corpus::TweetDocument& original, const corpus::TweetDocument& delivered,
                       const ValenceLexicon& lexicon);

nlohmann::ordered_json to_json(const DetectionReport& report);

}  // namespace mim::detect
