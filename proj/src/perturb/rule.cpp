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

#include "perturb/rule.hpp"

#include <set>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "corpus/tokenizer.hpp"

namespace mim::perturb {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw validation_error(field + " " + what);
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& j, const std::string& field, const std::pair<const char*, Enum> (&table)[N]) {
  if (!j.is_string()) fail(field, "must be a string");
  const std::string value = j.get<std::string>();
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  fail(field, "has unknown value '" + value + "'");
}

constexpr std::pair<const char*, RuleKind> kKinds[] = {
    {"word_swap", RuleKind::word_swap},       {"word_remove", RuleKind::word_remove},
    {"word_insert", RuleKind::word_insert},   {"hashtag_swap", RuleKind::hashtag_swap},
    {"metric_scale", RuleKind::metric_scale},
};
constexpr std::pair<const char*, Scope> kScopes[] = {
    {"all", Scope::all}, {"first", Scope::first}, {"comments_only", Scope::comments_only}};
constexpr std::pair<const char*, Side> kSides[] = {{"before", Side::before}, {"after", Side::after}};

std::set<std::string> allowed_fields(RuleKind kind) {
  std::set<std::string> fields = {"kind", "scope", "case_sensitive", "predicate"};
  switch (kind) {
    case RuleKind::word_swap: fields.insert({"match", "replacement", "candidates"}); break;
    case RuleKind::word_remove: fields.insert("match"); break;
    case RuleKind::word_insert: fields.insert({"insert_token", "anchor", "side"}); break;
    case RuleKind::hashtag_swap: fields.insert({"match", "replacement"}); break;
    case RuleKind::metric_scale: fields.insert("factor"); break;
  }
  return fields;
}

std::string get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(key, "is required");
  if (!it->is_string()) fail(key, "must be a string");
  return it->get<std::string>();
}

bool is_single_token(std::string_view text) {
  if (corpus::find_invalid_utf8(text)) return false;
  auto tokens = corpus::tokenize(text);
  return tokens.size() == 1 && tokens[0].byte_start == 0 && tokens[0].byte_end == text.size();
}

bool is_single_hashtag(std::string_view text) {
  if (!is_single_token(text)) return false;
  return corpus::tokenize(text)[0].kind == corpus::TokenKind::hashtag;
}

}  // namespace

const char* to_string(RuleKind kind) noexcept {
  for (const auto& [name, k] : kKinds) {
    if (k == kind) return name;
  }
  return "word_swap";
}

const char* to_string(Scope scope) noexcept {
  for (const auto& [name, s] : kScopes) {
    if (s == scope) return name;
  }
  return "all";
}

const char* to_string(Side side) noexcept { return side == Side::before ? "before" : "after"; }

void validate(const PerturbationRule& rule) {
  switch (rule.kind) {
    case RuleKind::word_swap:
      if (!is_single_token(rule.match)) fail("match", "must be a single token");
      if (rule.replacement.empty()) fail("replacement", "is required");
      if (!rule.uses_markov() && !is_single_token(rule.replacement)) fail("replacement", "must be a single token");
      if (!rule.candidates.empty() && !rule.uses_markov()) fail("candidates", "is only valid with \"&markov\"");
      for (const std::string& c : rule.candidates) {
        if (!is_single_token(c)) fail("candidates", "entries must be single tokens");
      }
      break;
    case RuleKind::word_remove:
      if (!is_single_token(rule.match)) fail("match", "must be a single token");
      break;
    case RuleKind::word_insert:
      if (!is_single_token(rule.insert_token)) fail("insert_token", "must be a single token");
      if (!is_single_token(rule.anchor)) fail("anchor", "must be a single token");
      break;
    case RuleKind::hashtag_swap:
      if (!is_single_hashtag(rule.match)) fail("match", "must be a hashtag starting with '#'");
      if (!is_single_hashtag(rule.replacement)) fail("replacement", "must be a hashtag starting with '#'");
      break;
    case RuleKind::metric_scale:
      if (rule.factor.num <= 0 || rule.factor.den <= 0) fail("factor", "must be > 0");
      break;
  }
  if (rule.predicate) {
    const RulePredicate& p = *rule.predicate;
    if (!p.hashtag_any && !p.author_is) fail("predicate", "must set hashtag_any or author_is");
    if (p.hashtag_any) {
      for (const std::string& tag : *p.hashtag_any) {
        if (tag.size() < 2 || tag.front() != '#') fail("predicate.hashtag_any", "entries must start with '#'");
      }
    }
  }
}

PerturbationRule rule_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("rule must be a JSON object");
  PerturbationRule rule;
  if (!j.contains("kind")) fail("kind", "is required");
  rule.kind = parse_enum(j.at("kind"), "kind", kKinds);

  const std::set<std::string> allowed = allowed_fields(rule.kind);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(key, std::string("is not valid for ") + to_string(rule.kind));
  }

  switch (rule.kind) {
    case RuleKind::word_swap:
      rule.match = get_string(j, "match");
      rule.replacement = get_string(j, "replacement");
      if (auto it = j.find("candidates"); it != j.end()) {
        if (!it->is_array()) fail("candidates", "must be an array of strings");
        for (const auto& c : *it) {
          if (!c.is_string()) fail("candidates", "must be an array of strings");
          rule.candidates.push_back(c.get<std::string>());
        }
      }
      break;
    case RuleKind::word_remove: rule.match = get_string(j, "match"); break;
    case RuleKind::word_insert:
      rule.insert_token = get_string(j, "insert_token");
      rule.anchor = get_string(j, "anchor");
      if (!j.contains("side")) fail("side", "is required");
      rule.side = parse_enum(j.at("side"), "side", kSides);
      break;
    case RuleKind::hashtag_swap:
      rule.match = get_string(j, "match");
      rule.replacement = get_string(j, "replacement");
      break;
    case RuleKind::metric_scale: {
      auto it = j.find("factor");
      if (it == j.end()) fail("factor", "is required");
      if (it->is_number_integer()) {
        rule.factor = Rational::make(it->get<std::int64_t>(), 1);
      } else if (it->is_number_float()) {
        rule.factor = Rational::parse(it->dump());
      } else if (it->is_string()) {
        rule.factor = Rational::parse(it->get<std::string>());
      } else {
        fail("factor", "must be a number or a \"p/q\" string");
      }
      break;
    }
  }

  if (auto it = j.find("scope"); it != j.end()) rule.scope = parse_enum(*it, "scope", kScopes);
  if (auto it = j.find("case_sensitive"); it != j.end()) {
    if (!it->is_boolean()) fail("case_sensitive", "must be a boolean");
    rule.case_sensitive = it->get<bool>();
  }
  if (auto it = j.find("predicate"); it != j.end()) {
    if (!it->is_object()) fail("predicate", "must be an object");
    RulePredicate p;
    for (const auto& [key, value] : it->items()) {
      if (key == "hashtag_any") {
        if (!value.is_array()) fail("predicate.hashtag_any", "must be an array of strings");
        std::vector<std::string> tags;
        for (const auto& t : value) {
          if (!t.is_string()) fail("predicate.hashtag_any", "must be an array of strings");
          tags.push_back(t.get<std::string>());
        }
        p.hashtag_any = std::move(tags);
      } else if (key == "author_is") {
        if (!value.is_string()) fail("predicate.author_is", "must be a string");
        p.author_is = value.get<std::string>();
      } else {
        fail("predicate." + key, "is not a known field");
      }
    }
    rule.predicate = std::move(p);
  }
  validate(rule);
  return rule;
}

ordered_json to_json(const PerturbationRule& rule) {
  ordered_json j;
  j["kind"] = to_string(rule.kind);
  switch (rule.kind) {
    case RuleKind::word_swap:
      j["match"] = rule.match;
      j["replacement"] = rule.replacement;
      if (!rule.candidates.empty()) j["candidates"] = rule.candidates;
      break;
    case RuleKind::word_remove: j["match"] = rule.match; break;
    case RuleKind::word_insert:
      j["insert_token"] = rule.insert_token;
      j["anchor"] = rule.anchor;
      j["side"] = to_string(rule.side);
      break;
    case RuleKind::hashtag_swap:
      j["match"] = rule.match;
      j["replacement"] = rule.replacement;
      break;
    case RuleKind::metric_scale:
      if (rule.factor.is_integer()) {
        j["factor"] = rule.factor.num;
      } else {
        j["factor"] = rule.factor.to_string();
      }
      break;
  }
  j["scope"] = to_string(rule.scope);
  j["case_sensitive"] = rule.case_sensitive;
  if (rule.predicate) {
    ordered_json p = ordered_json::object();
    if (rule.predicate->hashtag_any) p["hashtag_any"] = *rule.predicate->hashtag_any;
    if (rule.predicate->author_is) p["author_is"] = *rule.predicate->author_is;
    j["predicate"] = std::move(p);
  }
  return j;
}

RuleSet ruleset_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("ruleset must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "rules" && key != "description") fail(key, "is not a known ruleset field");
  }
  auto it = j.find("rules");
  if (it == j.end() || !it->is_array()) fail("rules", "must be an array");
  RuleSet rules;
  for (std::size_t i = 0; i < it->size(); ++i) {
    try {
      rules.push_back(rule_from_json((*it)[i]));
    } catch (const Error& e) {
      throw validation_error("rules[" + std::to_string(i) + "]." + e.what());
    }
  }
  return rules;
}

RuleSet parse_ruleset(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("malformed ruleset JSON: ") + e.what());
  }
  return ruleset_from_json(j);
}

RuleSet load_ruleset(const std::filesystem::path& path) {
  const std::string text = corpus::read_file(path);
  try {
    return parse_ruleset(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

ordered_json to_json(const RuleSet& rules) {
  ordered_json j;
  j["rules"] = ordered_json::array();
  for (const PerturbationRule& r : rules) j["rules"].push_back(to_json(r));
  return j;
}

}  // namespace mim::perturb
