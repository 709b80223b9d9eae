// Copyright 2026 The softfusion Authors. All rights reserved.
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

#include "softfusion/system.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "softfusion/errors.hpp"

namespace softfusion {
namespace {

TEST(SystemParams, ValidatesRanges) {
  SystemParams p;
  EXPECT_NO_THROW(p.validate());
  for (auto mutate : std::initializer_list<void (*)(SystemParams&)>{
           [](SystemParams& q) { q.n = 0; }, [](SystemParams& q) { q.sigma_b2 = 0.0; },
           [](SystemParams& q) { q.sigma_w2 = -1.0; }, [](SystemParams& q) { q.upsilon = 1.0; },
           [](SystemParams& q) { q.upsilon = 0.0; }, [](SystemParams& q) { q.alpha = -0.1; },
           [](SystemParams& q) { q.beta = -1.0; }}) {
    SystemParams q;
    mutate(q);
    EXPECT_THROW(q.validate(), DomainError);
  }
}

TEST(LinearGrid, InclusiveIndexArithmetic) {
  const LinearGrid g{0.01, 3.0, 0.01};
  ASSERT_EQ(g.count(), 300u);
  const auto lv = g.levels();
  EXPECT_DOUBLE_EQ(lv.front(), 0.01);
  EXPECT_DOUBLE_EQ(lv.back(), 3.0);
  EXPECT_DOUBLE_EQ(lv[149], 0.01 + 149 * 0.01);
  EXPECT_EQ((LinearGrid{1.0, 1.0, 0.5}.count()), 1u);
}

TEST(PowerGrid, RejectsUnorderedOrNonPositive) {
  EXPECT_THROW(PowerGrid({1.0, 1.0}, {1.0}), DomainError);
  EXPECT_THROW(PowerGrid({2.0, 1.0}, {1.0}), DomainError);
  EXPECT_THROW(PowerGrid({0.0, 1.0}, {1.0}), DomainError);
  EXPECT_THROW(PowerGrid({1.0}, {-1.0}), DomainError);
  EXPECT_THROW(PowerGrid({}, {1.0}), DomainError);
  EXPECT_NO_THROW(PowerGrid({1.0}, {0.0, 1.0}));
}

TEST(SinrThreshold, DefaultParameters) {
  const SystemParams p;
  const double tau = sinr_threshold(p);
  EXPECT_NEAR(tau, oracle::kTauDefault, 1e-9);
  EXPECT_NEAR(tau, 0.407, 5e-4);
  EXPECT_LE(std::abs(rate_residual(p, tau)), 1e-9);
}

TEST(SinrThreshold, MedianDecodingErrorRemovesPenalty) {
  for (int n : {1, 17, 200, 100000}) {
    SystemParams p;
    p.upsilon = 0.5;
    p.n = n;
    EXPECT_NEAR(sinr_threshold(p), std::exp2(p.rate) - 1.0, 1e-11);
  }
}

TEST(SinrThreshold, LargeBlocklengthApproachesShannon) {
  SystemParams p;
  p.n = 1000000;
  const double tau = sinr_threshold(p);
  EXPECT_NEAR(tau, oracle::kTauN1e6, 1e-9);
  EXPECT_NEAR(tau, std::exp2(0.4) - 1.0, 1e-2);
}

TEST(SinrThreshold, ResidualSmallAcrossParameters) {
  for (double rate : {0.1, 0.4, 1.0, 3.0}) {
    for (int n : {50, 200, 5000}) {
      SystemParams p;
      p.rate = rate;
      p.n = n;
      const double tau = sinr_threshold(p);
      EXPECT_LE(std::abs(rate_residual(p, tau)), 1e-9) << rate << " " << n;
    }
  }
}

TEST(SinrThreshold, InfeasibleRateThrows) {
  SystemParams p;
  p.rate = 25.0;  // needs tau > 2^25 - 1 > 1e6
  EXPECT_THROW(sinr_threshold(p), InfeasibleRateError);
}

TEST(OutagePure, Examples) {
  EXPECT_NEAR(outage_pure({1e9, 0.0}, 0.407, 1.0), 0.0, 1e-9);
  EXPECT_NEAR(outage_pure({2.0, 0.0}, 0.407, 1.0), oracle::kOutage2And0, 1e-15);
  EXPECT_NEAR(outage_pure({2.0, 0.0}, 0.407, 1.0), 0.18413, 5e-6);
  EXPECT_NEAR(outage_pure({2.0, 2.0}, 0.407, 1.0), oracle::kOutage2And2, 1e-15);
}

TEST(OutagePure, AgreesWithRayleighMonteCarlo) {
  // SINR = g_a P_A / (sigma_b2 + g_j P_J) with unit-mean exponential gains.
  std::mt19937_64 rng(20260101);
  std::exponential_distribution<double> gain(1.0);
  const int draws = 10000000;
  int outages = 0;
  for (int i = 0; i < draws; ++i) {
    const double ga = gain(rng);
    const double gj = gain(rng);
    outages += (ga * 2.0 / (1.0 + gj * 2.0) < 0.407);
  }
  const double p = oracle::kOutage2And2;
  const double sigma = std::sqrt(p * (1 - p) / draws);
  EXPECT_NEAR(static_cast<double>(outages) / draws, outage_pure({2.0, 2.0}, 0.407, 1.0),
              4 * sigma);
}

TEST(OutagePure, MonotoneAndBounded) {
  const auto levels = LinearGrid{0.1, 5.0, 0.1}.levels();
  ASSERT_EQ(levels.size(), 50u);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const double v = outage_pure({levels[i], levels[j]}, 0.407, 1.0);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      if (i + 1 < levels.size()) EXPECT_GT(v, outage_pure({levels[i + 1], levels[j]}, 0.407, 1.0));
      if (j + 1 < levels.size()) EXPECT_LT(v, outage_pure({levels[i], levels[j + 1]}, 0.407, 1.0));
    }
  }
}

TEST(OutageMixed, PointMassUniformAndOracle) {
  const PowerGrid grid({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto pm = AliceJammerStrategy(ProbabilityTable::point_mass(3, 3, i, j));
      EXPECT_EQ(outage_mixed(pm, grid, 0.407, 1.0), outage_pure(grid.pair(i, j), 0.407, 1.0));
    }
  }
  std::vector<double> two(9, 0.0);
  two[1] = two[5] = 0.5;
  const double mean = 0.5 * (outage_pure(grid.pair(0, 1), 0.407, 1.0) +
                             outage_pure(grid.pair(1, 2), 0.407, 1.0));
  EXPECT_NEAR(outage_mixed(AliceJammerStrategy(3, 3, two), grid, 0.407, 1.0), mean, 1e-15);
  const auto uni = AliceJammerStrategy(ProbabilityTable::uniform(3, 3));
  EXPECT_NEAR(outage_mixed(uni, grid, 0.407, 1.0), oracle::kOutageUniform3x3, 1e-15);
}

TEST(OutageMixed, ShapeMismatchThrows) {
  const PowerGrid grid({1.0, 2.0, 3.0}, {1.0, 2.0});
  EXPECT_THROW(outage_mixed(AliceJammerStrategy(ProbabilityTable::uniform(2, 3)), grid, 0.4, 1.0),
               ShapeError);
}

TEST(OutageFeasibleSet, Examples) {
  const auto grid = PowerGrid::from_grids({0.01, 3.0, 0.01}, {0.01, 3.0, 0.01});
  // At P_A = 0.01 the outage is 1 - 2e-18, above 1 - 1e-12; the target is
  // only vacuous once the weakest Alice level clears that margin.
  const auto coarse = PowerGrid::from_grids({0.1, 3.0, 0.01}, {0.01, 3.0, 0.01});
  EXPECT_EQ(outage_feasible_set(coarse, 0.407, 1.0, 1 - 1e-12).size(), coarse.pair_count());
  EXPECT_LT(outage_feasible_set(grid, 0.407, 1.0, 1 - 1e-12).size(), grid.pair_count());
  EXPECT_TRUE(outage_feasible_set(grid, 0.407, 1.0, 1e-12).empty());
  const auto half = outage_feasible_set(grid, 0.407, 1.0, 0.5);
  EXPECT_FALSE(half.empty());
  const std::pair<std::size_t, std::size_t> corner{grid.alice_count() - 1, 0};
  EXPECT_DOUBLE_EQ(grid.pair(corner.first, corner.second).p_a, 3.0);
  EXPECT_DOUBLE_EQ(grid.pair(corner.first, corner.second).p_j, 0.01);
  EXPECT_NE(std::find(half.begin(), half.end(), corner), half.end());
  for (const auto& [i, j] : half) EXPECT_LE(outage_pure(grid.pair(i, j), 0.407, 1.0), 0.5);
}

}  // namespace
}  // namespace softfusion
