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

// Reference implementations used only by tests. Each one is written the
// slow, obvious way and shares no code with the library it checks.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corpus/document.hpp"

namespace mim::testing {

struct AlignOracle {
  std::size_t cost = 0;
  std::size_t max_substitutions = 0;  // most substitutions any minimal script can use
};
// Prefix-table Levenshtein over tokens, tracking substitutions on ties.
AlignOracle align_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Plain recursion without memoisation; only for short inputs.
std::size_t edit_distance_recursive(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Bigram counts over case-folded content tokens, one body at a time.
using BigramCounts = std::map<std::pair<std::string, std::string>, std::uint64_t>;
BigramCounts bigram_oracle(const corpus::Corpus& docs);

// Index of the first candidate with least squared difference to input.
std::size_t nearest_oracle(const std::vector<int>& input, const std::vector<std::vector<int>>& candidates);
double euclid_oracle(const std::vector<int>& a, const std::vector<int>& b);

// Upper tail of chi-square(df) by adaptive Simpson integration of the
// density in long double.
long double chi_square_sf_oracle(long double x, int df);

struct KWOracle {
  long double h = 0;
  long double h_uncorrected = 0;
};
// Ranks by counting smaller and equal values; tie blocks by counting.
KWOracle kruskal_wallis_oracle(const std::vector<std::vector<double>>& groups);

}  // namespace mim::testing
