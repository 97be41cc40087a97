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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "stats/kruskal_wallis.hpp"
#include "support/oracles.hpp"
#include "support/support.hpp"

namespace mim::stats {
namespace {

TEST(Ranks, MidRanks) {
  EXPECT_EQ(rank_with_ties(std::vector<double>{10, 20, 20, 30}), (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(rank_with_ties(std::vector<double>{5, 5, 5}), (std::vector<double>{2, 2, 2}));
  EXPECT_EQ(rank_with_ties(std::vector<double>{3, 1, 2}), (std::vector<double>{3, 1, 2}));
}

TEST(KruskalWallis, TwoSeparatedGroups) {
  const KWResult r = kruskal_wallis({{1, 2, 3}, {4, 5, 6}});
  const testing::KWOracle o = testing::kruskal_wallis_oracle({{1, 2, 3}, {4, 5, 6}});
  EXPECT_NEAR(r.h, 3.857, 0.001);
  EXPECT_NEAR(r.h, static_cast<double>(o.h), 1e-12);
  EXPECT_EQ(r.df, 1);
  EXPECT_NEAR(r.p, 0.0495, 0.001);
  EXPECT_NEAR(r.p, static_cast<double>(testing::chi_square_sf_oracle(o.h, 1)), 1e-10);
}

TEST(KruskalWallis, AllTiedIsZero) {
  const KWResult r = kruskal_wallis({{5, 5}, {5, 5}});
  EXPECT_EQ(r.h, 0.0);
  EXPECT_EQ(r.p, 1.0);
}

TEST(KruskalWallis, IdenticalGroupsGiveZero) {
  const std::vector<double> g = {3, 1, 4, 1, 5};
  const KWResult r = kruskal_wallis({g, g, g});
  EXPECT_NEAR(r.h, 0.0, 1e-9);
  EXPECT_EQ(r.df, 2);
}

TEST(KruskalWallis, Errors) {
  EXPECT_THROW(kruskal_wallis({{1, 2, 3}}), Error);
  EXPECT_THROW(kruskal_wallis({{1, 2}, {}}), Error);
  EXPECT_THROW(kruskal_wallis({{1}, {2}}), Error);
}

TEST(KruskalWallis, Json) {
  const auto groups = groups_from_json(nlohmann::json::parse("[[1,2,3],[4,5,6]]"));
  EXPECT_EQ(groups.size(), 2u);
  const auto j = to_json(kruskal_wallis(groups));
  EXPECT_TRUE(j.contains("h") && j.contains("df") && j.contains("p"));
  EXPECT_THROW(groups_from_json(nlohmann::json::parse("[[1,\"x\"],[2]]")), Error);
  EXPECT_THROW(groups_from_json(nlohmann::json::parse("{}")), Error);
}

TEST(ChiSquare, ClosedForms) {
  for (int df : {1, 2, 5, 30}) EXPECT_EQ(chi_square_sf(0.0, df), 1.0);
  EXPECT_NEAR(chi_square_sf(2 * std::log(2.0), 2), 0.5, 1e-12);
  for (double x = 0.0; x <= 100.0; x += 0.37) {
    EXPECT_NEAR(chi_square_sf(x, 2), std::exp(-x / 2), 1e-9) << x;
    EXPECT_NEAR(chi_square_sf(x, 1), std::erfc(std::sqrt(x / 2)), 1e-9) << x;
  }
}

TEST(ChiSquare, MatchesIntegrationOracle) {
  EXPECT_NEAR(chi_square_sf(3.857, 1), 0.0495, 0.001);
  for (int df = 1; df <= 30; ++df) {
    for (double x : {0.01, 0.5, 1.0, 3.857, 7.5, 13.622, 14.573, 25.0, 40.0, 60.0, 100.0}) {
      const double want = static_cast<double>(testing::chi_square_sf_oracle(x, df));
      const double got = chi_square_sf(x, df);
      if (want > 1e-300) {
        EXPECT_LE(std::fabs(got - want), 1e-8 * want + 1e-15) << "df " << df << " x " << x;
      }
    }
  }
}

TEST(ChiSquare, MonotoneAndErrors) {
  for (int df : {1, 3, 10}) {
    double prev = 1.0;
    for (double x = 0; x < 80; x += 0.5) {
      const double p = chi_square_sf(x, df);
      ASSERT_LE(p, prev);
      ASSERT_GE(p, 0.0);
      prev = p;
    }
    EXPECT_LT(chi_square_sf(500, df), 1e-50);
  }
  EXPECT_THROW(chi_square_sf(-1, 1), Error);
  EXPECT_THROW(chi_square_sf(1, 0), Error);
}

std::vector<std::vector<double>> random_groups(testing::Gen& gen, bool likert) {
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(gen.uniform(2, 5)));
  std::size_t total = 0;
  for (auto& g : groups) {
    g.resize(static_cast<std::size_t>(gen.uniform(1, 12)));
    for (double& v : g) v = likert ? gen.uniform(1, 5) : gen.real(-50, 50);
    total += g.size();
  }
  if (total < 3) groups[0].push_back(likert ? 3 : 0.5);
  return groups;
}

// Property: H agrees with the counting oracle, is invariant under strictly
// increasing transforms and group permutations, and equals the uncorrected
// statistic when no value repeats.
TEST(KruskalWallisProperty, Invariances) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool likert = gen.coin();
    auto groups = random_groups(gen, likert);
    const KWResult r = kruskal_wallis(groups);
    const testing::KWOracle o = testing::kruskal_wallis_oracle(groups);
    ASSERT_NEAR(r.h, static_cast<double>(o.h), 1e-9 * std::max(1.0, r.h));
    ASSERT_EQ(r.df, static_cast<int>(groups.size()) - 1);
    ASSERT_GE(r.p, 0.0);
    ASSERT_LE(r.p, 1.0);

    const double a = gen.real(0.1, 10.0);
    const double b = gen.real(-5.0, 5.0);
    auto transformed = groups;
    const bool use_exp = gen.coin();
    for (auto& g : transformed) {
      for (double& v : g) v = use_exp ? std::exp(v / 25.0) : a * v + b;
    }
    const KWResult t = kruskal_wallis(transformed);
    ASSERT_NEAR(t.h, r.h, 1e-9 * std::max(1.0, r.h));
    ASSERT_NEAR(t.p, r.p, 1e-9);

    auto permuted = groups;
    std::shuffle(permuted.begin(), permuted.end(), gen.engine());
    const KWResult q = kruskal_wallis(permuted);
    ASSERT_NEAR(q.h, r.h, 1e-9 * std::max(1.0, r.h));
    ASSERT_NEAR(q.p, r.p, 1e-12);

    if (!likert) {
      ASSERT_NEAR(r.h, static_cast<double>(o.h_uncorrected), 1e-9 * std::max(1.0, r.h));
    }
  }
}

}  // namespace
}  // namespace mim::stats
