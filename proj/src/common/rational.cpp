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

#include "common/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>

#include "common/error.hpp"

namespace mim {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw validation_error("invalid rational '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw validation_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return make(parse_int(text, text), 1);

  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = text.substr(dot + 1);
  if (frac_part.empty() || frac_part.size() > 15) {
    throw validation_error("invalid rational '" + std::string(text) + "'");
  }
  bool negative = !int_part.empty() && int_part.front() == '-';
  if (negative) int_part.remove_prefix(1);
  std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
  std::int64_t frac = parse_int(frac_part, text);
  if (frac < 0) throw validation_error("invalid rational '" + std::string(text) + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  std::int64_t num = whole * den + frac;
  return make(negative ? -num : num, den);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {
// Products of two int64 values, computed without overflow.
__extension__ using Wide = __int128;
}  // namespace

Rational operator*(const Rational& a, const Rational& b) {
  const Wide num = static_cast<Wide>(a.num) * b.num;
  const Wide den = static_cast<Wide>(a.den) * b.den;
  Wide x = num < 0 ? -num : num;
  Wide y = den;
  while (y != 0) {
    Wide t = x % y;
    x = y;
    y = t;
  }
  const Wide g = x == 0 ? 1 : x;
  return Rational::make(static_cast<std::int64_t>(num / g), static_cast<std::int64_t>(den / g));
}

std::int64_t scale_count(std::int64_t count, const Rational& factor) {
  const Wide product = static_cast<Wide>(count) * factor.num;
  const Wide den = factor.den;
  const Wide magnitude = product < 0 ? -product : product;
  // floor((2|x| + d) / 2d) rounds |x|/d half away from zero.
  const Wide rounded = (2 * magnitude + den) / (2 * den);
  return static_cast<std::int64_t>(product < 0 ? -rounded : rounded);
}

bool scales_exactly(std::int64_t count, const Rational& factor) {
  return (static_cast<Wide>(count) * factor.num) % factor.den == 0;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    case ErrorKind::runtime: return "runtime";
  }
  return "runtime";
}

}  // namespace mim
