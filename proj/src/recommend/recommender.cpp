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

#include "recommend/recommender.hpp"

#include <cmath>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "corpus/tokenizer.hpp"

namespace mim::recommend {

const char* to_string(Stance stance) noexcept { return stance == Stance::pro ? "pro" : "anti"; }

const char* to_string(Rhetoric rhetoric) noexcept {
  switch (rhetoric) {
    case Rhetoric::authority: return "authority";
    case Rhetoric::social_proof: return "social_proof";
    case Rhetoric::labeling: return "labeling";
  }
  return "authority";
}

namespace {

std::vector<std::string> folded_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const corpus::Token& t : corpus::tokenize(text)) out.push_back(corpus::fold_case(t.text));
  return out;
}

bool contains_run(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.size() > haystack.size()) return false;
  for (std::size_t start = 0; start + needle.size() <= haystack.size(); ++start) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size() && all; ++k) all = haystack[start + k] == needle[k];
    if (all) return true;
  }
  return false;
}

}  // namespace

FeatureVector extract_features(std::string_view text, const KeywordLexicon& lexicon) {
  if (lexicon.pro.empty() || lexicon.anti.empty()) {
    throw config_error("keyword lexicon needs non-empty pro and anti lists");
  }
  const std::vector<std::string> tokens = folded_tokens(text);
  FeatureVector out;
  out.reserve(lexicon.dimension());
  for (const auto* list : {&lexicon.pro, &lexicon.anti}) {
    for (const std::string& keyword : *list) {
      const std::vector<std::string> needle = folded_tokens(keyword);
      if (needle.empty()) throw config_error("keyword '" + keyword + "' has no tokens");
      out.push_back(contains_run(tokens, needle) ? 1 : 0);
    }
  }
  return out;
}

double distance(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw validation_error("feature vectors differ in length (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + ")");
  }
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

Jitter::Jitter(std::uint64_t seed) : engine_(seed) {}

double Jitter::next(double epsilon) {
  // 53 random bits mapped onto [0, 1); the engine's output is fixed by the
  // standard, so draws are identical on every platform.
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  if (epsilon <= 0) return 0.0;
  const double u = unit * epsilon;
  return u < epsilon ? u : std::nextafter(epsilon, 0.0);
}

Recommendation nearest(const FeatureVector& input, std::span<const FeatureVector> candidates, double epsilon,
                       std::uint64_t seed) {
  if (candidates.empty()) throw validation_error("candidate list must be non-empty");
  if (!std::isfinite(epsilon) || epsilon < 0) throw validation_error("epsilon must be a finite value ≥ 0");
  Recommendation rec;
  Jitter jitter(seed);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = distance(input, candidates[i]);
    const double score = d + jitter.next(epsilon);
    rec.distances.push_back(d);
    rec.scores.push_back(score);
    if (score < rec.scores[rec.chosen]) rec.chosen = i;
  }
  return rec;
}

Recommendation recommend(std::string_view input, std::span<const ResponseCandidate> candidates,
                         const KeywordLexicon& lexicon, double epsilon, std::uint64_t seed) {
  if (candidates.empty()) throw validation_error("candidate list must be non-empty");
  const FeatureVector query = extract_features(input, lexicon);
  std::vector<FeatureVector> features;
  features.reserve(candidates.size());
  for (const ResponseCandidate& c : candidates) features.push_back(extract_features(c.text, lexicon));
  return nearest(query, features, epsilon, seed);
}

std::vector<ResponseCandidate> parse_candidates(std::string_view text) {
  std::vector<ResponseCandidate> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw validation_error(prefix + "malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw validation_error(prefix + "record must be an object");
    for (const auto& [key, value] : j.items()) {
      if (key != "text" && key != "stance" && key != "rhetoric") {
        throw validation_error(prefix + key + " is not a known field");
      }
    }
    ResponseCandidate c;
    if (!j.contains("text") || !j["text"].is_string()) throw validation_error(prefix + "text must be a string");
    c.text = j["text"].get<std::string>();
    if (c.text.empty()) throw validation_error(prefix + "text must be non-empty");

    const std::string stance = j.value("stance", "");
    if (stance == "pro") c.stance = Stance::pro;
    else if (stance == "anti") c.stance = Stance::anti;
    else throw validation_error(prefix + "stance must be \"pro\" or \"anti\"");

    const std::string rhetoric = j.value("rhetoric", "");
    if (rhetoric == "authority") c.rhetoric = Rhetoric::authority;
    else if (rhetoric == "social_proof") c.rhetoric = Rhetoric::social_proof;
    else if (rhetoric == "labeling") c.rhetoric = Rhetoric::labeling;
    else throw validation_error(prefix + "rhetoric must be authority, social_proof or labeling");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ResponseCandidate> load_candidates(const std::filesystem::path& path) {
  const std::string text = corpus::read_file(path);
  try {
    return parse_candidates(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

KeywordLexicon keywords_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("keyword lexicon must be a JSON object");
  KeywordLexicon lex;
  for (const auto& [key, value] : j.items()) {
    std::vector<std::string>* list = key == "pro" ? &lex.pro : key == "anti" ? &lex.anti : nullptr;
    if (key == "description") continue;
    if (!list) throw validation_error(key + " is not a known keyword lexicon field");
    if (!value.is_array()) throw validation_error(key + " must be an array of strings");
    for (const auto& k : value) {
      if (!k.is_string()) throw validation_error(key + " must be an array of strings");
      list->push_back(k.get<std::string>());
    }
  }
  return lex;
}

KeywordLexicon load_keywords(const std::filesystem::path& path) {
  const std::string text = corpus::read_file(path);
  try {
    return keywords_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(path.string() + ": malformed JSON: " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const Recommendation& rec, std::span<const ResponseCandidate> candidates) {
  nlohmann::ordered_json j;
  j["chosen"] = rec.chosen;
  if (rec.chosen < candidates.size()) j["text"] = candidates[rec.chosen].text;
  j["scores"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rec.scores.size(); ++i) {
    nlohmann::ordered_json row;
    row["index"] = i;
    if (i < candidates.size()) {
      row["text"] = candidates[i].text;
      row["stance"] = to_string(candidates[i].stance);
      row["rhetoric"] = to_string(candidates[i].rhetoric);
    }
    row["distance"] = rec.distances[i];
    row["score"] = rec.scores[i];
    j["scores"].push_back(std::move(row));
  }
  return j;
}

}  // namespace mim::recommend
