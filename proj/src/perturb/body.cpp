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

#include "perturb/body.hpp"

#include "corpus/tokenizer.hpp"

namespace mim::perturb {

LexedBody LexedBody::lex(std::string_view body) {
  LexedBody out;
  out.tokens = corpus::tokenize(body);
  std::size_t cursor = 0;
  for (const corpus::Token& tok : out.tokens) {
    out.gaps.emplace_back(body.substr(cursor, tok.byte_start - cursor));
    cursor = tok.byte_end;
  }
  out.gaps.emplace_back(body.substr(cursor));
  return out;
}

std::string LexedBody::render() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += gaps[i];
    out += tokens[i].text;
  }
  out += gaps.back();
  return out;
}

std::string joined_gap(const LexedBody& body, std::size_t index) {
  const std::size_t n = body.size();
  if (index == 0) return body.gaps.front();
  if (index + 1 == n) return body.gaps.back();
  const std::string& before = body.gaps[index];
  const std::string& after = body.gaps[index + 1];
  return (before.empty() || after.empty()) ? std::string() : std::string(" ");
}

namespace {

std::string render_pieces(const std::vector<std::string>& texts, const std::vector<std::string>& gaps) {
  std::string out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out += gaps[i];
    out += texts[i];
  }
  out += gaps.back();
  return out;
}

std::vector<std::string> texts_of(const LexedBody& body) {
  std::vector<std::string> texts;
  texts.reserve(body.size());
  for (const corpus::Token& t : body.tokens) texts.push_back(t.text);
  return texts;
}

}  // namespace

std::string replace_token(const LexedBody& body, std::size_t index, std::string_view text,
                          const std::string* gap_before, const std::string* gap_after) {
  std::vector<std::string> texts = texts_of(body);
  std::vector<std::string> gaps = body.gaps;
  texts[index] = std::string(text);
  if (gap_before) gaps[index] = *gap_before;
  if (gap_after) gaps[index + 1] = *gap_after;
  return render_pieces(texts, gaps);
}

std::string erase_token(const LexedBody& body, std::size_t index, std::string_view gap) {
  std::vector<std::string> texts = texts_of(body);
  std::vector<std::string> gaps = body.gaps;
  texts.erase(texts.begin() + static_cast<std::ptrdiff_t>(index));
  gaps[index] = std::string(gap);
  gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(index) + 1);
  return render_pieces(texts, gaps);
}

std::string insert_token(const LexedBody& body, std::size_t index, std::string_view text, std::string_view gap_before,
                         std::string_view gap_after) {
  std::vector<std::string> texts = texts_of(body);
  std::vector<std::string> gaps = body.gaps;
  texts.insert(texts.begin() + static_cast<std::ptrdiff_t>(index), std::string(text));
  gaps[index] = std::string(gap_after);
  gaps.insert(gaps.begin() + static_cast<std::ptrdiff_t>(index), std::string(gap_before));
  return render_pieces(texts, gaps);
}

}  // namespace mim::perturb
