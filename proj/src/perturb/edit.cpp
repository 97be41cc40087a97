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

#include "perturb/edit.hpp"

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "perturb/body.hpp"

namespace mim::perturb {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(EditOp op) noexcept {
  switch (op) {
    case EditOp::substitute: return "substitute";
    case EditOp::erase: return "delete";
    case EditOp::insert: return "insert";
    case EditOp::hashtag_swap: return "hashtag_swap";
    case EditOp::metric_scale: return "metric_scale";
  }
  return "substitute";
}

const char* to_string(Field field) noexcept {
  switch (field) {
    case Field::body: return "body";
    case Field::hashtags: return "hashtags";
    case Field::metrics: return "metrics";
  }
  return "body";
}

namespace {

[[noreturn]] void mismatch(const Edit& edit, const std::string& why) {
  throw validation_error(std::string("edit ") + to_string(edit.op) + " on " + to_string(edit.field) +
                         " does not apply: " + why);
}

std::size_t index_of(const Edit& edit) {
  if (!edit.token_index) mismatch(edit, "token_index missing");
  return *edit.token_index;
}

void apply_body(std::string& body, const Edit& edit) {
  const LexedBody lexed = LexedBody::lex(body);
  const std::size_t i = index_of(edit);
  switch (edit.op) {
    case EditOp::substitute:
    case EditOp::hashtag_swap:
      if (i >= lexed.size() || lexed.tokens[i].text != edit.original_text()) {
        mismatch(edit, "token " + std::to_string(i) + " is not '" + edit.original_text() + "'");
      }
      body = replace_token(lexed, i, edit.replacement_text(), edit.gap_before ? &*edit.gap_before : nullptr,
                           edit.gap_after ? &*edit.gap_after : nullptr);
      return;
    case EditOp::erase:
      if (i >= lexed.size() || lexed.tokens[i].text != edit.original_text()) {
        mismatch(edit, "token " + std::to_string(i) + " is not '" + edit.original_text() + "'");
      }
      body = erase_token(lexed, i, edit.gap_before.value_or(joined_gap(lexed, i)));
      return;
    case EditOp::insert:
      if (i > lexed.size()) mismatch(edit, "insert position " + std::to_string(i) + " is past the end");
      body = insert_token(lexed, i, edit.replacement_text(), edit.gap_before.value_or(" "),
                          edit.gap_after.value_or(" "));
      return;
    case EditOp::metric_scale: mismatch(edit, "metric edit addressed to the body");
  }
}

void apply_hashtags(std::vector<std::string>& tags, const Edit& edit) {
  const std::size_t i = index_of(edit);
  switch (edit.op) {
    case EditOp::substitute:
    case EditOp::hashtag_swap:
      if (i >= tags.size() || tags[i] != edit.original_text()) mismatch(edit, "hashtag mismatch at " + std::to_string(i));
      tags[i] = edit.replacement_text();
      return;
    case EditOp::erase:
      if (i >= tags.size() || tags[i] != edit.original_text()) mismatch(edit, "hashtag mismatch at " + std::to_string(i));
      tags.erase(tags.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    case EditOp::insert:
      if (i > tags.size()) mismatch(edit, "insert position past the end");
      tags.insert(tags.begin() + static_cast<std::ptrdiff_t>(i), edit.replacement_text());
      return;
    case EditOp::metric_scale: mismatch(edit, "metric edit addressed to hashtags");
  }
}

}  // namespace

void apply_edit(corpus::TweetDocument& doc, const Edit& edit) {
  switch (edit.field) {
    case Field::body:
      if (!std::holds_alternative<std::string>(edit.original) || !std::holds_alternative<std::string>(edit.replacement)) {
        mismatch(edit, "body edits carry text values");
      }
      apply_body(doc.body, edit);
      return;
    case Field::hashtags:
      if (!std::holds_alternative<std::string>(edit.original) || !std::holds_alternative<std::string>(edit.replacement)) {
        mismatch(edit, "hashtag edits carry text values");
      }
      apply_hashtags(doc.hashtags, edit);
      return;
    case Field::metrics:
      if (!std::holds_alternative<corpus::Metrics>(edit.original) ||
          !std::holds_alternative<corpus::Metrics>(edit.replacement)) {
        mismatch(edit, "metric edits carry metric values");
      }
      if (doc.metrics != std::get<corpus::Metrics>(edit.original)) mismatch(edit, "original metrics differ");
      doc.metrics = std::get<corpus::Metrics>(edit.replacement);
      return;
  }
}

Thread replay(const Thread& original, const EditLog& log) {
  Thread out = original;
  for (const Edit& e : log) apply_edit(locate(out, e.location), e);
  return out;
}

corpus::TweetDocument replay(const corpus::TweetDocument& original, const EditLog& log) {
  corpus::TweetDocument out = original;
  for (const Edit& e : log) apply_edit(out, e);
  return out;
}

ordered_json to_json(const Location& where) {
  ordered_json j;
  j["kind"] = where.is_root() ? "root" : "comment";
  if (!where.is_root()) j["id"] = where.comment_id;
  return j;
}

namespace {

ordered_json value_json(const EditValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return corpus::to_json(std::get<corpus::Metrics>(v));
}

EditValue value_from_json(const json& j, Field field, const char* key) {
  if (field == Field::metrics) return corpus::metrics_from_json(j, key);
  if (!j.is_string()) throw validation_error(std::string(key) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

ordered_json to_json(const Edit& edit) {
  ordered_json j;
  j["op"] = to_string(edit.op);
  j["location"] = to_json(edit.location);
  j["field"] = to_string(edit.field);
  if (edit.token_index) j["token_index"] = *edit.token_index;
  j["original"] = value_json(edit.original);
  j["replacement"] = value_json(edit.replacement);
  if (edit.gap_before) j["gap_before"] = *edit.gap_before;
  if (edit.gap_after) j["gap_after"] = *edit.gap_after;
  return j;
}

ordered_json to_json(const EditLog& log) {
  ordered_json j = ordered_json::array();
  for (const Edit& e : log) j.push_back(to_json(e));
  return j;
}

Edit edit_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("edit must be an object");
  Edit e;
  const std::string op = j.value("op", "");
  if (op == "substitute") e.op = EditOp::substitute;
  else if (op == "delete") e.op = EditOp::erase;
  else if (op == "insert") e.op = EditOp::insert;
  else if (op == "hashtag_swap") e.op = EditOp::hashtag_swap;
  else if (op == "metric_scale") e.op = EditOp::metric_scale;
  else throw validation_error("edit op '" + op + "' is unknown");

  const std::string field = j.value("field", "");
  if (field == "body") e.field = Field::body;
  else if (field == "hashtags") e.field = Field::hashtags;
  else if (field == "metrics") e.field = Field::metrics;
  else throw validation_error("edit field '" + field + "' is unknown");

  if (auto it = j.find("location"); it != j.end() && it->is_object()) {
    if (it->value("kind", "root") == "comment") e.location = Location::comment(it->value("id", ""));
  }
  if (auto it = j.find("token_index"); it != j.end()) e.token_index = it->get<std::size_t>();
  if (!j.contains("original") || !j.contains("replacement")) {
    throw validation_error("edit requires original and replacement");
  }
  e.original = value_from_json(j.at("original"), e.field, "original");
  e.replacement = value_from_json(j.at("replacement"), e.field, "replacement");
  if (auto it = j.find("gap_before"); it != j.end()) e.gap_before = it->get<std::string>();
  if (auto it = j.find("gap_after"); it != j.end()) e.gap_after = it->get<std::string>();
  return e;
}

EditLog edit_log_from_json(const json& j) {
  if (!j.is_array()) throw validation_error("edit log must be an array");
  EditLog log;
  for (const auto& e : j) log.push_back(edit_from_json(e));
  return log;
}

}  // namespace mim::perturb
