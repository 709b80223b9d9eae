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

#include "softfusion/montecarlo.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace softfusion::mc {
namespace {

void expect_within_4_sigma(const Estimate& e, double analytic) {
  const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(e.trials));
  EXPECT_LE(std::abs(e.p - analytic), 4.0 * sigma + 1e-12)
      << "empirical " << e.p << " analytic " << analytic;
}

TEST(CounterRng, DeterministicPerStream) {
  CounterRng a(7, 3);
  CounterRng b(7, 3);
  CounterRng c(7, 4);
  int same_as_other_stream = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    if (x == c.next_u64()) ++same_as_other_stream;
  }
  EXPECT_EQ(same_as_other_stream, 0);
}

TEST(CounterRng, OpenUnitAndExponentialMean) {
  CounterRng r(1, 0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double u = r.next_open_unit();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += r.next_exponential(2.5);
  }
  // Exponential variance is mean^2.
  EXPECT_NEAR(sum / n, 2.5, 4.0 * 2.5 / std::sqrt(n));
}

TEST(SimulateDetection, ReferencePair) {
  SystemParams params;
  const PowerPair pair{2.0, 2.0};
  const FcAction action{1, 3.8312};
  SimConfig cfg;
  const auto d = simulate_detection(pair, action, params, cfg);
  EXPECT_EQ(d.pfa.trials, cfg.trials);
  expect_within_4_sigma(d.pfa, pfa_pure(2.0, 1, 3.8312, 200, 1.0));
  expect_within_4_sigma(d.pmd, pmd_pure(2.0, 2.0, 1, 3.8312, 200, 1.0));
  EXPECT_NEAR(d.pfa.std_error, std::sqrt(d.pfa.p * (1.0 - d.pfa.p) / cfg.trials), 1e-15);
}

TEST(SimulateDetection, HugeThreshold) {
  SystemParams params;
  SimConfig cfg;
  cfg.trials = 10'000;
  const auto d = simulate_detection({2.0, 2.0}, {1, 1e6}, params, cfg);
  EXPECT_EQ(d.pfa.p, 0.0);
  EXPECT_EQ(d.pmd.p, 1.0);
}

TEST(SimulateDetection, SeededDeterminismAcrossWorkers) {
  SystemParams params;
  SimConfig cfg;
  cfg.trials = 50'000;
  cfg.seed = 99;
  cfg.workers = 1;
  const auto a = simulate_detection({0.3, 0.5}, {2, 1.65}, params, cfg);
  const auto b = simulate_detection({0.3, 0.5}, {2, 1.65}, params, cfg);
  cfg.workers = 4;
  const auto c = simulate_detection({0.3, 0.5}, {2, 1.65}, params, cfg);
  EXPECT_EQ(a.pfa.hits, b.pfa.hits);
  EXPECT_EQ(a.pmd.hits, b.pmd.hits);
  EXPECT_EQ(a.pfa.hits, c.pfa.hits);
  EXPECT_EQ(a.pmd.hits, c.pmd.hits);
  cfg.seed = 100;
  const auto d = simulate_detection({0.3, 0.5}, {2, 1.65}, params, cfg);
  EXPECT_NE(a.pfa.hits, d.pfa.hits);
}

TEST(SimulateOutage, NoJammerClosedForm) {
  SimConfig cfg;
  cfg.trials = 1'000'000;
  const auto e = simulate_outage({1.5, 0.0}, 0.407, 1.0, cfg);
  expect_within_4_sigma(e, 1.0 - std::exp(-0.407 / 1.5));
}

TEST(SimulateOutage, MatchesAnalytic) {
  SimConfig cfg;
  cfg.trials = 1'000'000;
  const auto e = simulate_outage({2.0, 2.0}, 0.407, 1.0, cfg);
  expect_within_4_sigma(e, outage_pure({2.0, 2.0}, 0.407, 1.0));
  cfg.workers = 3;
  EXPECT_EQ(simulate_outage({2.0, 2.0}, 0.407, 1.0, cfg).hits, e.hits);
}

TEST(SimulateOutage, VanishingThreshold) {
  SimConfig cfg;
  cfg.trials = 100'000;
  EXPECT_EQ(simulate_outage({2.0, 2.0}, 1e-12, 1.0, cfg).p, 0.0);
}

TEST(Agreement, RandomConfigurations) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> power(0.1, 3.0);
  std::uniform_real_distribution<double> scale(0.9, 1.1);
  std::uniform_int_distribution<int> w_pick(1, 2);
  const std::uint64_t trials = 20'000;
  // Configurations with fewer than ten expected hits or misses are redrawn;
  // the binomial sigma is meaningless there.
  auto normal_regime = [&](double p) { return trials * std::min(p, 1.0 - p) >= 10.0; };
  for (int k = 0; k < 20;) {
    SystemParams params;
    params.n = 100;
    const PowerPair pair{power(rng), power(rng)};
    const FcAction action{w_pick(rng), optimal_threshold(pair, 1.0) * scale(rng)};
    if (!normal_regime(pfa_pure(pair.p_j, action.w, action.t, 100, 1.0)) ||
        !normal_regime(pmd_pure(pair.p_a, pair.p_j, action.w, action.t, 100, 1.0))) {
      continue;
    }
    SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = 1000 + k;
    const auto d = simulate_detection(pair, action, params, cfg);
    expect_within_4_sigma(d.pfa, pfa_pure(pair.p_j, action.w, action.t, 100, 1.0));
    expect_within_4_sigma(d.pmd, pmd_pure(pair.p_a, pair.p_j, action.w, action.t, 100, 1.0));
    cfg.trials = 200'000;
    expect_within_4_sigma(simulate_outage(pair, 0.407, 1.0, cfg), outage_pure(pair, 0.407, 1.0));
    ++k;
  }
}

}  // namespace
}  // namespace softfusion::mc
