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

#include "corpus/corpus_io.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <unordered_set>

#include "common/error.hpp"
#include "corpus/tokenizer.hpp"

namespace mim::corpus {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kDocumentFields = {"id", "author", "verified", "body", "hashtags", "metrics", "parent_id"};
const std::set<std::string> kMetricFields = {"replies", "retweets", "likes"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw validation_error(field + " " + what);
}

const json& require(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "is required");
  return *it;
}

std::string require_string(const json& obj, const std::string& key) {
  const json& v = require(obj, key);
  if (!v.is_string()) fail(key, "must be a string");
  return v.get<std::string>();
}

TweetDocument document_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("record must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kDocumentFields.count(key)) fail(key, "is not a known field");
  }

  TweetDocument doc;
  doc.id = require_string(j, "id");
  doc.author = require_string(j, "author");
  const json& verified = require(j, "verified");
  if (!verified.is_boolean()) fail("verified", "must be a boolean");
  doc.verified = verified.get<bool>();
  doc.body = require_string(j, "body");

  const json& tags = require(j, "hashtags");
  if (!tags.is_array()) fail("hashtags", "must be an array of strings");
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!tags[i].is_string()) fail("hashtags[" + std::to_string(i) + "]", "must be a string");
    doc.hashtags.push_back(tags[i].get<std::string>());
  }

  doc.metrics = metrics_from_json(require(j, "metrics"));

  if (auto it = j.find("parent_id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) fail("parent_id", "must be a string or null");
    doc.parent_id = it->get<std::string>();
  }
  validate_document(doc);
  return doc;
}

}  // namespace

Metrics metrics_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kMetricFields.count(key)) fail(where + "." + key, "is not a known field");
  }
  auto count = [&](const char* key) -> std::int64_t {
    const std::string field = where + "." + key;
    auto it = j.find(key);
    if (it == j.end()) fail(field, "is required");
    if (!it->is_number_integer()) fail(field, "must be an integer");
    if (it->is_number_unsigned()) {
      auto v = it->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(INT64_MAX)) fail(field, "is out of range");
      return static_cast<std::int64_t>(v);
    }
    auto v = it->get<std::int64_t>();
    if (v < 0) fail(field, "must be ≥ 0");
    return v;
  };
  Metrics m;
  m.replies = count("replies");
  m.retweets = count("retweets");
  m.likes = count("likes");
  return m;
}

void validate_document(const TweetDocument& doc) {
  if (doc.id.empty()) fail("id", "must be non-empty");
  if (auto bad = find_invalid_utf8(doc.body)) {
    fail("body", "has invalid UTF-8 at byte offset " + std::to_string(*bad));
  }
  for (std::size_t i = 0; i < doc.hashtags.size(); ++i) {
    const std::string& tag = doc.hashtags[i];
    const std::string field = "hashtags[" + std::to_string(i) + "]";
    if (tag.size() < 2 || tag.front() != '#') fail(field, "must start with '#'");
    if (tag.find_first_of(" \t\n\r\v\f") != std::string::npos) fail(field, "must not contain whitespace");
  }
  const Metrics& m = doc.metrics;
  if (m.replies < 0) fail("metrics.replies", "must be ≥ 0");
  if (m.retweets < 0) fail("metrics.retweets", "must be ≥ 0");
  if (m.likes < 0) fail("metrics.likes", "must be ≥ 0");
  if (doc.parent_id && *doc.parent_id == doc.id) fail("parent_id", "must not refer to the document itself");
}

std::vector<Record> parse_records(std::string_view text, const ParseOptions& options) {
  std::vector<Record> records;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::parse_error& e) {
      throw validation_error(prefix + "malformed JSON: " + e.what());
    }
    Record rec;
    try {
      rec.doc = document_from_json(parsed);
    } catch (const Error& e) {
      throw validation_error(prefix + e.what());
    }
    if (!ids.insert(rec.doc.id).second) {
      throw validation_error(prefix + "duplicate id '" + rec.doc.id + "'");
    }
    rec.raw = std::string(line);
    rec.line = line_no;
    records.push_back(std::move(rec));
  }

  if (options.require_parents) {
    for (const Record& rec : records) {
      if (rec.doc.parent_id && !ids.count(*rec.doc.parent_id)) {
        throw validation_error("line " + std::to_string(rec.line) + ": parent_id refers to unknown document '" +
                               *rec.doc.parent_id + "'");
      }
    }
  }
  return records;
}

Corpus parse_corpus(std::string_view text, const ParseOptions& options) {
  Corpus out;
  for (Record& rec : parse_records(text, options)) out.push_back(std::move(rec.doc));
  return out;
}

Corpus parse_corpus(std::istream& in, const ParseOptions& options) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_corpus(text, options);
}

Corpus load_corpus(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_corpus(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  write_file(path, serialize_corpus(corpus));
}

ordered_json to_json(const Metrics& m) {
  ordered_json j;
  j["replies"] = m.replies;
  j["retweets"] = m.retweets;
  j["likes"] = m.likes;
  return j;
}

ordered_json to_json(const TweetDocument& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["author"] = doc.author;
  j["verified"] = doc.verified;
  j["body"] = doc.body;
  j["hashtags"] = doc.hashtags;
  j["metrics"] = to_json(doc.metrics);
  if (doc.parent_id) j["parent_id"] = *doc.parent_id;
  return j;
}

std::string serialize_document(const TweetDocument& doc) { return to_json(doc).dump(); }

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const TweetDocument& doc : corpus) {
    out += serialize_document(doc);
    out += '\n';
  }
  return out;
}

const TweetDocument* find_document(const Corpus& corpus, std::string_view id) noexcept {
  for (const TweetDocument& doc : corpus) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

}  // namespace mim::corpus
