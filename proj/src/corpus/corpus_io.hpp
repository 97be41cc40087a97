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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corpus/document.hpp"

namespace mim::corpus {

struct ParseOptions {
  // When false, parent_id values may point outside the parsed payload. A
  // single fetched comment is a valid payload on the wire.
  bool require_parents = true;
};

// A parsed line together with the exact bytes it came from.
struct Record {
  TweetDocument doc;
  std::string raw;
  std::size_t line = 0;
};

// JSON Lines, one document per line. Blank lines are skipped. Errors name
// the 1-based line number and the offending field.
std::vector<Record> parse_records(std::string_view text, const ParseOptions& options = {});
Corpus parse_corpus(std::string_view text, const ParseOptions& options = {});
Corpus parse_corpus(std::istream& in, const ParseOptions& options = {});

Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

// Canonical single-line encoding, fixed key order, no trailing newline.
std::string serialize_document(const TweetDocument& doc);
// One serialized document per line, each terminated by '\n'.
std::string serialize_corpus(const Corpus& corpus);

nlohmann::ordered_json to_json(const TweetDocument& doc);
nlohmann::ordered_json to_json(const Metrics& metrics);
Metrics metrics_from_json(const nlohmann::json& j, const std::string& where = "metrics");

// Checks the per-document invariants; the message names the field.
void validate_document(const TweetDocument& doc);

const TweetDocument* find_document(const Corpus& corpus, std::string_view id) noexcept;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

}  // namespace mim::corpus
