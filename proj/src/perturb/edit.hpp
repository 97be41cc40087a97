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
#include <variant>
#include <vector>

#include <json.hpp>

#include "corpus/document.hpp"
#include "perturb/thread.hpp"

namespace mim::perturb {

enum class EditOp { substitute, erase, insert, hashtag_swap, metric_scale };
enum class Field { body, hashtags, metrics };

const char* to_string(EditOp op) noexcept;  // "delete" for erase
const char* to_string(Field field) noexcept;

using EditValue = std::variant<std::string, corpus::Metrics>;

// One change to one document. Edits in a log apply in order, each against
// the result of the previous one; token_index always refers to the
// document state at the moment the edit applies.
//
// Body edits carry the whitespace they leave behind so that replay is
// byte-exact: erase stores the merged gap in gap_before; insert stores both
// gaps around the new token; substitute stores them only when they change.
struct Edit {
  EditOp op = EditOp::substitute;
  Location location;
  Field field = Field::body;
  std::optional<std::size_t> token_index;
  EditValue original = std::string();
  EditValue replacement = std::string();
  std::optional<std::string> gap_before;
  std::optional<std::string> gap_after;

  const std::string& original_text() const { return std::get<std::string>(original); }
  const std::string& replacement_text() const { return std::get<std::string>(replacement); }

  friend bool operator==(const Edit&, const Edit&) = default;
};

using EditLog = std::vector<Edit>;

// Applies one edit to the document it addresses. Throws Error(validation)
// if the edit does not fit the document (wrong index or original value).
void apply_edit(corpus::TweetDocument& doc, const Edit& edit);

Thread replay(const Thread& original, const EditLog& log);
corpus::TweetDocument replay(const corpus::TweetDocument& original, const EditLog& log);

nlohmann::ordered_json to_json(const Location& where);
nlohmann::ordered_json to_json(const Edit& edit);
nlohmann::ordered_json to_json(const EditLog& log);
Edit edit_from_json(const nlohmann::json& j);
EditLog edit_log_from_json(const nlohmann::json& j);

}  // namespace mim::perturb
