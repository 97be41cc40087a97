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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

namespace mim::detect {

// Opposite-valence token pairs and negators, all case-folded. Pairs are
// stored in both directions.
class ValenceLexicon {
 public:
  ValenceLexicon() = default;

  // Throws Error(validation) if a token is paired with two different
  // opposites or with itself.
  void add_pair(std::string_view a, std::string_view b);
  void add_negator(std::string_view token);

  std::optional<std::string> opposite(std::string_view token) const;
  bool is_negator(std::string_view token) const;

  const std::map<std::string, std::string, std::less<>>& pairs() const noexcept { return pairs_; }
  const std::set<std::string, std::less<>>& negators() const noexcept { return negators_; }

  // {"pairs": {"wrong": "right", ...}, "negators": ["not", ...]}
  static ValenceLexicon from_json(const nlohmann::json& j);
  static ValenceLexicon load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

 private:
  std::map<std::string, std::string, std::less<>> pairs_;
  std::set<std::string, std::less<>> negators_;
};

}  // namespace mim::detect
