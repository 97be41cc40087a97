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
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mim::recommend {

enum class Stance { pro, anti };
enum class Rhetoric { authority, social_proof, labeling };

const char* to_string(Stance stance) noexcept;
const char* to_string(Rhetoric rhetoric) noexcept;

struct ResponseCandidate {
  std::string text;
  Stance stance = Stance::pro;
  Rhetoric rhetoric = Rhetoric::authority;

  friend bool operator==(const ResponseCandidate&, const ResponseCandidate&) = default;
};

// Keyword phrases per stance; feature dimensions follow pro then anti, each
// in list order.
struct KeywordLexicon {
  std::vector<std::string> pro;
  std::vector<std::string> anti;

  std::size_t dimension() const noexcept { return pro.size() + anti.size(); }
};

// One 0/1 entry per keyword.
using FeatureVector = std::vector<std::uint8_t>;

// Dimension i is 1 iff keyword i appears in the case-folded text as a
// contiguous run of tokens. Throws Error(config) for an empty list or a
// keyword without tokens.
FeatureVector extract_features(std::string_view text, const KeywordLexicon& lexicon);

// Euclidean distance. Throws Error(validation) on a length mismatch.
double distance(const FeatureVector& a, const FeatureVector& b);

// Uniform draws from [0, epsilon) in a fixed, platform-independent way.
class Jitter {
 public:
  explicit Jitter(std::uint64_t seed);
  double next(double epsilon);

 private:
  std::mt19937_64 engine_;
};

struct Recommendation {
  std::size_t chosen = 0;
  std::vector<double> distances;  // un-jittered
  std::vector<double> scores;     // distance + jitter, per candidate
};

// Nearest candidate by jittered distance. The i-th jitter draw goes to the
// i-th candidate; with epsilon = 0 ties resolve to the earliest candidate.
Recommendation nearest(const FeatureVector& input, std::span<const FeatureVector> candidates, double epsilon,
                       std::uint64_t seed);

Recommendation recommend(std::string_view input, std::span<const ResponseCandidate> candidates,
                         const KeywordLexicon& lexicon, double epsilon, std::uint64_t seed);

inline constexpr double kDefaultEpsilon = 0.001;

// JSONL {text, stance, rhetoric}.
std::vector<ResponseCandidate> parse_candidates(std::string_view text);
std::vector<ResponseCandidate> load_candidates(const std::filesystem::path& path);
// {"pro": [...], "anti": [...]}
KeywordLexicon keywords_from_json(const nlohmann::json& j);
KeywordLexicon load_keywords(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const Recommendation& rec, std::span<const ResponseCandidate> candidates);

}  // namespace mim::recommend
