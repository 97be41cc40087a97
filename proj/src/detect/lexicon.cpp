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

#include "detect/lexicon.hpp"

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "corpus/tokenizer.hpp"

namespace mim::detect {

void ValenceLexicon::add_pair(std::string_view a, std::string_view b) {
  const std::string fa = corpus::fold_case(a);
  const std::string fb = corpus::fold_case(b);
  if (fa.empty() || fb.empty()) throw validation_error("valence pairs must be non-empty");
  if (fa == fb) throw validation_error("valence pair '" + fa + "' maps to itself");
  for (const auto& [from, to] : {std::pair{fa, fb}, std::pair{fb, fa}}) {
    auto [it, inserted] = pairs_.emplace(from, to);
    if (!inserted && it->second != to) {
      throw validation_error("valence token '" + from + "' paired with both '" + it->second + "' and '" + to + "'");
    }
  }
}

void ValenceLexicon::add_negator(std::string_view token) {
  if (token.empty()) throw validation_error("negators must be non-empty");
  negators_.insert(corpus::fold_case(token));
}

std::optional<std::string> ValenceLexicon::opposite(std::string_view token) const {
  auto it = pairs_.find(corpus::fold_case(token));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

bool ValenceLexicon::is_negator(std::string_view token) const {
  return negators_.count(corpus::fold_case(token)) > 0;
}

ValenceLexicon ValenceLexicon::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("valence lexicon must be a JSON object");
  ValenceLexicon lex;
  for (const auto& [key, value] : j.items()) {
    if (key != "pairs" && key != "negators" && key != "description") {
      throw validation_error(key + " is not a known lexicon field");
    }
  }
  if (auto it = j.find("pairs"); it != j.end()) {
    if (!it->is_object()) throw validation_error("pairs must be an object");
    for (const auto& [a, b] : it->items()) {
      if (!b.is_string()) throw validation_error("pairs." + a + " must be a string");
      lex.add_pair(a, b.get<std::string>());
    }
  }
  if (auto it = j.find("negators"); it != j.end()) {
    if (!it->is_array()) throw validation_error("negators must be an array");
    for (const auto& n : *it) {
      if (!n.is_string()) throw validation_error("negators must be strings");
      lex.add_negator(n.get<std::string>());
    }
  }
  return lex;
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& path) {
  const std::string text = corpus::read_file(path);
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(path.string() + ": malformed JSON: " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json ValenceLexicon::to_json() const {
  nlohmann::ordered_json j;
  j["pairs"] = nlohmann::ordered_json::object();
  for (const auto& [a, b] : pairs_) {
    if (a < b) j["pairs"][a] = b;
  }
  j["negators"] = nlohmann::ordered_json::array();
  for (const std::string& n : negators_) j["negators"].push_back(n);
  return j;
}

}  // namespace mim::detect
