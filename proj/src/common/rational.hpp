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

#include <cstdint>
#include <string>
#include <string_view>

namespace mim {

// Exact positive-or-zero rational with a positive, reduced denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);

  // Accepts "4", "1.5", "3/2" and "-2" (sign is kept; callers validate).
  static Rational parse(std::string_view text);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const noexcept { return den == 1; }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator*(const Rational& a, const Rational& b);

// round_half_away_from_zero(count * factor) computed without floating point.
std::int64_t scale_count(std::int64_t count, const Rational& factor);

// True when count * factor is an exact integer.
bool scales_exactly(std::int64_t count, const Rational& factor);

}  // namespace mim
