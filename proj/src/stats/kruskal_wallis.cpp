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

#include "stats/kruskal_wallis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "common/error.hpp"

namespace mim::stats {

std::vector<double> rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw validation_error("cannot rank an empty sample");
  for (double v : values) {
    if (std::isnan(v)) throw validation_error("cannot rank NaN");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && values[order[end]] == values[order[start]]) ++end;
    // Ranks start+1 .. end share their mean.
    const double mid = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = mid;
    start = end;
  }
  return ranks;
}

KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw validation_error("Kruskal-Wallis needs at least two groups");
  std::vector<double> pooled;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw validation_error("group " + std::to_string(g) + " is empty");
    pooled.insert(pooled.end(), groups[g].begin(), groups[g].end());
  }
  const double n = static_cast<double>(pooled.size());
  if (pooled.size() < 3) throw validation_error("Kruskal-Wallis needs at least three observations");

  const std::vector<double> ranks = rank_with_ties(pooled);

  double between = 0;
  std::size_t offset = 0;
  for (const auto& group : groups) {
    double rank_sum = 0;
    for (std::size_t k = 0; k < group.size(); ++k) rank_sum += ranks[offset + k];
    between += rank_sum * rank_sum / static_cast<double>(group.size());
    offset += group.size();
  }

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_sum += t * t * t - t;
    i = j;
  }
  const double correction = 1.0 - tie_sum / (n * n * n - n);

  KWResult result;
  result.df = static_cast<int>(groups.size()) - 1;
  if (correction <= 0) {
    result.h = 0.0;
  } else {
    const double raw = 12.0 / (n * (n + 1.0)) * between - 3.0 * (n + 1.0);
    result.h = std::max(0.0, raw / correction);
  }
  result.p = chi_square_sf(result.h, result.df);
  return result;
}

double chi_square_sf(double x, int df) {
  if (df < 1) throw validation_error("degrees of freedom must be ≥ 1");
  if (std::isnan(x) || x < 0) throw validation_error("chi-square statistic must be ≥ 0");
  if (x == 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(static_cast<double>(df) / 2.0, x / 2.0);
}

nlohmann::ordered_json to_json(const KWResult& r) {
  nlohmann::ordered_json j;
  j["h"] = r.h;
  j["df"] = r.df;
  j["p"] = r.p;
  return j;
}

std::vector<std::vector<double>> groups_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw validation_error("groups must be a JSON array of arrays");
  std::vector<std::vector<double>> groups;
  for (std::size_t g = 0; g < j.size(); ++g) {
    if (!j[g].is_array()) throw validation_error("groups[" + std::to_string(g) + "] must be an array of numbers");
    std::vector<double> values;
    for (const auto& v : j[g]) {
      if (!v.is_number()) throw validation_error("groups[" + std::to_string(g) + "] must contain only numbers");
      values.push_back(v.get<double>());
    }
    groups.push_back(std::move(values));
  }
  return groups;
}

}  // namespace mim::stats
