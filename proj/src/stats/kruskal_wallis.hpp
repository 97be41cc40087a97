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

#include <span>
#include <vector>

#include <json.hpp>

namespace mim::stats {

struct KWResult {
  double h = 0.0;  // tie-corrected statistic
  int df = 1;      // groups - 1
  double p = 1.0;  // asymptotic chi-square upper tail
};

// 1-based mid-ranks: tied values share the mean of the ranks they span.
std::vector<double> rank_with_ties(std::span<const double> values);

// Kruskal-Wallis H with the usual tie correction,
//   H = [12 / (N (N + 1)) * sum_i R_i^2 / n_i - 3 (N + 1)] / [1 - sum (t^3 - t) / (N^3 - N)],
// R_i being the rank sum of group i and t the size of each tie block. When
// every observation is equal the correction vanishes and H is 0.
// Throws Error(validation) for fewer than two groups, an empty group or
// N < 3.
KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// P(X > x) for X ~ chi-square(df), i.e. the regularized upper incomplete
// gamma function Q(df / 2, x / 2). Throws Error(validation) for x < 0 or df < 1.
double chi_square_sf(double x, int df);

nlohmann::ordered_json to_json(const KWResult& result);
std::vector<std::vector<double>> groups_from_json(const nlohmann::json& j);

}  // namespace mim::stats
