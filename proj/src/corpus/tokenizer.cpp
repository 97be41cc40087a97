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

#include "corpus/tokenizer.hpp"

#include <cstdint>

#include "common/error.hpp"

namespace mim::corpus {

namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 0;  // 0 means invalid
};

CodePoint decode(std::string_view text, std::size_t pos) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
    min_value = 0x10000;
  } else {
    return {};
  }
  if (pos + length > text.size()) return {};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) return {};
    value = (value << 6) | (cont & 0x3F);
  }
  if (value < min_value || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return {};
  return {value, length};
}

enum class CharClass { space, letter, digit, apostrophe, hash, at, dash_or_underscore, other };

CharClass classify(char32_t c) noexcept {
  if (c < 0x80) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return CharClass::space;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return CharClass::letter;
    if (c >= '0' && c <= '9') return CharClass::digit;
    if (c == '\'') return CharClass::apostrophe;
    if (c == '#') return CharClass::hash;
    if (c == '@') return CharClass::at;
    if (c == '-' || c == '_') return CharClass::dash_or_underscore;
    return CharClass::other;
  }
  if (c == 0x00A0 || (c >= 0x2000 && c <= 0x200B) || c == 0x202F || c == 0x205F || c == 0x3000) {
    return CharClass::space;
  }
  if (c == 0x2019) return CharClass::apostrophe;
  if ((c >= 0x00A1 && c <= 0x00BF) || c == 0x00D7 || c == 0x00F7 || (c >= 0x2010 && c <= 0x2027) ||
      (c >= 0x2030 && c <= 0x205E) || (c >= 0x2190 && c <= 0x2BFF) || (c >= 0x3001 && c <= 0x3003) ||
      (c >= 0x1F000 && c <= 0x1FAFF)) {
    return CharClass::other;
  }
  return CharClass::letter;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() const noexcept { return pos_ >= text_.size(); }
  std::size_t pos() const noexcept { return pos_; }

  CharClass peek_class(std::size_t at) const {
    if (at >= text_.size()) return CharClass::space;
    return classify(decode_checked(at).value);
  }
  std::size_t next_pos(std::size_t at) const { return at + decode_checked(at).length; }

  void advance_to(std::size_t pos) noexcept { pos_ = pos; }

 private:
  CodePoint decode_checked(std::size_t at) const {
    CodePoint cp = decode(text_, at);
    if (cp.length == 0) {
      throw validation_error("invalid UTF-8 at byte offset " + std::to_string(at));
    }
    return cp;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_alnum(CharClass c) noexcept { return c == CharClass::letter || c == CharClass::digit; }

}  // namespace

std::optional<std::size_t> find_invalid_utf8(std::string_view text) noexcept {
  std::size_t pos = 0;
  while (pos < text.size()) {
    CodePoint cp = decode(text, pos);
    if (cp.length == 0) return pos;
    pos += cp.length;
  }
  return std::nullopt;
}

const char* to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::hashtag: return "hashtag";
    case TokenKind::mention: return "mention";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
  }
  return "punctuation";
}

std::vector<Token> tokenize(std::string_view body) {
  if (auto bad = find_invalid_utf8(body)) {
    throw validation_error("invalid UTF-8 at byte offset " + std::to_string(*bad));
  }

  std::vector<Token> tokens;
  Scanner scan(body);
  while (!scan.done()) {
    const std::size_t start = scan.pos();
    const CharClass cls = scan.peek_class(start);
    if (cls == CharClass::space) {
      scan.advance_to(scan.next_pos(start));
      continue;
    }

    std::size_t end = scan.next_pos(start);
    TokenKind kind = TokenKind::punctuation;

    if (cls == CharClass::letter) {
      kind = TokenKind::word;
      for (;;) {
        while (scan.peek_class(end) == CharClass::letter) end = scan.next_pos(end);
        // An apostrophe only joins when a letter follows it ("don't").
        if (scan.peek_class(end) == CharClass::apostrophe &&
            scan.peek_class(scan.next_pos(end)) == CharClass::letter) {
          end = scan.next_pos(end);
          continue;
        }
        break;
      }
    } else if (cls == CharClass::digit) {
      kind = TokenKind::number;
      while (scan.peek_class(end) == CharClass::digit) end = scan.next_pos(end);
    } else if (cls == CharClass::hash && is_alnum(scan.peek_class(end))) {
      kind = TokenKind::hashtag;
      while (is_alnum(scan.peek_class(end))) end = scan.next_pos(end);
    } else if (cls == CharClass::at) {
      auto handle_char = [](CharClass c) { return is_alnum(c) || c == CharClass::dash_or_underscore; };
      if (handle_char(scan.peek_class(end))) {
        kind = TokenKind::mention;
        while (handle_char(scan.peek_class(end))) end = scan.next_pos(end);
      }
    }

    tokens.push_back(Token{std::string(body.substr(start, end - start)), start, end, kind});
    scan.advance_to(end);
  }
  return tokens;
}

std::string fold_case(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace mim::corpus
