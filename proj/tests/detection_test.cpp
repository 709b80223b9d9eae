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

#include "softfusion/detection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle_values.hpp"
#include "softfusion/errors.hpp"

namespace softfusion {
namespace {

constexpr double kReferenceT = 3.8312;

// Fraction of blocks whose sample energy mean over w*n exponential draws of
// mean mu exceeds t.
double exceed_rate(double mu, int w, int n, double t, int blocks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0 / mu);
  int hits = 0;
  for (int b = 0; b < blocks; ++b) {
    double s = 0.0;
    for (int k = 0; k < w * n; ++k) s += e(rng);
    hits += (s / (w * n) > t);
  }
  return static_cast<double>(hits) / blocks;
}

std::vector<double> threshold_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (std::size_t k = 0;; ++k) {
    const double t = lo + k * step;
    if (t > hi) break;
    g.push_back(t);
  }
  return g;
}

double five_point(double (*f)(double, const void*), const void* ctx, double t, double h) {
  return (-f(t + 2 * h, ctx) + 8 * f(t + h, ctx) - 8 * f(t - h, ctx) + f(t - 2 * h, ctx)) /
         (12 * h);
}

TEST(PfaPure, Examples) {
  EXPECT_NEAR(pfa_pure(2.0, 1, 3.0 * std::numbers::ln2, 1, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(pfa_pure(2.0, 4, 1e-9, 200, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(pfa_pure(2.0, 4, kReferenceT, 200, 1.0), oracle::kPfaW4, 1e-9 * oracle::kPfaW4);
  EXPECT_NEAR(pfa_pure(2.0, 1, kReferenceT, 200, 1.0), oracle::kPfaW1, 1e-9 * oracle::kPfaW1);
}

TEST(PfaPure, AgreesWithExponentialBlocks) {
  const int blocks = 100000;
  for (int w : {1, 4}) {
    const double p = pfa_pure(2.0, w, kReferenceT, 200, 1.0);
    const double mc = exceed_rate(3.0, w, 200, kReferenceT, blocks, 11 + w);
    // A zero-probability floor of one hit keeps the band meaningful when
    // p * blocks << 1.
    const double sigma = std::sqrt(std::max(p * (1 - p), 1.0 / blocks) / blocks);
    EXPECT_NEAR(mc, p, 4 * sigma) << "W=" << w;
  }
}

TEST(PmdPure, Examples) {
  EXPECT_NEAR(pmd_pure(2.0, 2.0, 4, 1e-9, 200, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(pmd_pure(2.0, 2.0, 1, 5.0 * std::numbers::ln2, 1, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(pmd_pure(2.0, 2.0, 1, kReferenceT, 200, 1.0), oracle::kPmdW1, 1e-9 * oracle::kPmdW1);
}

TEST(PmdPure, AgreesWithExponentialBlocks) {
  const int blocks = 100000;
  const double p = pmd_pure(2.0, 2.0, 1, kReferenceT, 200, 1.0);
  const double mc = 1.0 - exceed_rate(5.0, 1, 200, kReferenceT, blocks, 99);
  EXPECT_NEAR(mc, p, 4 * std::sqrt(p * (1 - p) / blocks));
}

TEST(ErrorSum, MinimumSitsAtOptimalThreshold) {
  SystemParams params;
  const PowerPair pair{2.0, 2.0};
  const double ts = optimal_threshold(pair, 1.0);
  const double at = error_sum_pure(pair, {1, ts}, params);
  for (double t = 3.0; t < 5.0; t += 0.0007) {
    EXPECT_GE(error_sum_pure(pair, {1, t}, params), at - 1e-15) << t;
  }
  const auto grid = threshold_grid(3.0, 5.0, 1e-4);
  const auto best = argmin_threshold(pair, 1, 200, 1.0, grid);
  EXPECT_NEAR(best.t, 3.8312, 1e-4);
}

TEST(ErrorSum, IndistinguishableHypotheses) {
  SystemParams params;
  const PowerPair pair{1e-6, 2.0};
  for (double t : {3.0, 3.0 + 5e-7, 3.0 + 1e-6}) {
    EXPECT_NEAR(error_sum_pure(pair, {1, t}, params), 1.0, 1e-3);
  }
}

TEST(ErrorAverages, PointMassesLinearityAndOracle) {
  SystemParams params;
  params.n = 20;
  const PowerGrid grid({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  const FcActionSpace space({1, 2}, {2.5, 4.0});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < space.size(); ++k) {
        const auto aj = AliceJammerStrategy(ProbabilityTable::point_mass(3, 3, i, j));
        const auto fc = FcStrategy(ProbabilityTable::point_mass(2, 2, k / 2, k % 2));
        const auto a = space.action(k);
        const auto pr = grid.pair(i, j);
        EXPECT_DOUBLE_EQ(pfa_avg(aj, fc, grid, space, params),
                         pfa_pure(pr.p_j, a.w, a.t, 20, 1.0));
        EXPECT_DOUBLE_EQ(pmd_avg(aj, fc, grid, space, params),
                         pmd_pure(pr.p_a, pr.p_j, a.w, a.t, 20, 1.0));
      }
    }
  }
  const auto aj = AliceJammerStrategy(ProbabilityTable::uniform(3, 3));
  const auto fc_a = FcStrategy(ProbabilityTable::point_mass(2, 2, 0, 1));
  const auto fc_b = FcStrategy(ProbabilityTable::point_mass(2, 2, 1, 0));
  const auto fc_ab = FcStrategy(2, 2, {0.0, 0.5, 0.5, 0.0});
  EXPECT_NEAR(pfa_avg(aj, fc_ab, grid, space, params),
              0.5 * (pfa_avg(aj, fc_a, grid, space, params) +
                     pfa_avg(aj, fc_b, grid, space, params)),
              1e-15);
  const auto fc = FcStrategy(ProbabilityTable::uniform(2, 2));
  EXPECT_NEAR(pfa_avg(aj, fc, grid, space, params), oracle::kPfaAvg36, 1e-13);
  EXPECT_NEAR(pmd_avg(aj, fc, grid, space, params), oracle::kPmdAvg36, 1e-13);
}

TEST(ErrorAverages, ShapeMismatchThrows) {
  SystemParams params;
  const PowerGrid grid({1.0, 2.0}, {1.0});
  const FcActionSpace space({1, 2}, {2.5, 4.0});
  const auto aj = AliceJammerStrategy(ProbabilityTable::uniform(2, 1));
  EXPECT_THROW(pfa_avg(aj, FcStrategy(ProbabilityTable::uniform(2, 3)), grid, space, params),
               ShapeError);
  EXPECT_THROW(pmd_avg(AliceJammerStrategy(ProbabilityTable::uniform(1, 2)),
                       FcStrategy(ProbabilityTable::uniform(2, 2)), grid, space, params),
               ShapeError);
}

TEST(OptimalThreshold, Examples) {
  EXPECT_NEAR(optimal_threshold({2.0, 2.0}, 1.0), oracle::kTstarReference, 1e-13);
  EXPECT_NEAR(optimal_threshold({2.0, 2.0}, 1.0), 3.8312, 5e-5);
  const double e = std::numbers::e;
  EXPECT_NEAR(optimal_threshold({e - 1, 0.0}, 1.0), e / (e - 1), 1e-14);
  for (double c : {0.1, 3.0, 10.0}) {
    EXPECT_NEAR(optimal_threshold({2.0 * c, 2.0 * c}, c), c * oracle::kTstarReference,
                1e-13 * c * oracle::kTstarReference);
  }
  EXPECT_THROW(optimal_threshold({0.0, 1.0}, 1.0), DomainError);
  EXPECT_THROW(optimal_threshold({-1.0, 1.0}, 1.0), DomainError);
}

TEST(OptimalThreshold, LiesStrictlyBetweenMeans) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-8.0, 8.0);
  for (int i = 0; i < 10000; ++i) {
    const PowerPair pair{std::exp(lg(rng)), std::exp(lg(rng))};
    const double sw2 = std::exp(lg(rng) / 4);
    const auto mu = HypothesisMeans::of(pair, sw2);
    const double ts = optimal_threshold(pair, sw2);
    EXPECT_GT(ts, mu.mu0);
    EXPECT_LT(ts, mu.mu1);
  }
}

TEST(OptimalThreshold, ArgminIndependentOfWardenCount) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> power(0.01, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PowerPair pair{power(rng), power(rng)};
    const auto mu = HypothesisMeans::of(pair, 1.0);
    const auto grid = threshold_grid(0.001, mu.mu1 + 0.5, 0.001);
    const double ts = optimal_threshold(pair, 1.0);
    const auto ref = argmin_threshold(pair, 1, 200, 1.0, grid);
    EXPECT_LE(std::abs(ref.t - ts), 0.001 + 1e-12) << trial;
    for (int w : {4, 16, 64}) {
      const auto got = argmin_threshold(pair, w, 200, 1.0, grid);
      EXPECT_LE(std::abs(static_cast<long>(got.index) - static_cast<long>(ref.index)), 1)
          << "trial " << trial << " W=" << w;
      EXPECT_LE(std::abs(got.t - ts), 0.001 + 1e-12);
    }
  }
}

TEST(ErrorDerivative, VanishesAtOptimum) {
  for (int w : {1, 4, 16}) {
    const PowerPair pair{2.0, 2.0};
    const double ts = optimal_threshold(pair, 1.0);
    // Scale: either density alone at t*.
    const auto mu = HypothesisMeans::of(pair, 1.0);
    const double k = 200.0 * w;
    const double scale = std::exp(k * std::log(k / mu.mu0) + (k - 1) * std::log(ts) -
                                  k * ts / mu.mu0 - std::lgamma(k));
    EXPECT_LE(std::abs(error_derivative(ts, pair, w, 200, 1.0)), 1e-8 * scale) << w;
    EXPECT_LT(error_derivative(0.5 * ts, pair, w, 200, 1.0), 0.0);
    EXPECT_GT(error_derivative(1.5 * ts, pair, w, 200, 1.0), 0.0);
  }
}

TEST(ErrorDerivative, SignPattern) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> power(0.01, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const PowerPair pair{power(rng), power(rng)};
    const double ts = optimal_threshold(pair, 1.0);
    for (int w : {1, 4, 16, 64}) {
      for (int k = 1; k <= 50; ++k) {
        const double left = ts * k / 51.0;
        const double right = ts * (1.0 + 2.0 * k / 51.0);
        EXPECT_EQ(error_derivative_log(left, pair, w, 200, 1.0).sign, -1) << left;
        EXPECT_EQ(error_derivative_log(right, pair, w, 200, 1.0).sign, 1) << right;
      }
    }
  }
}

struct FdCtx {
  PowerPair pair;
  int w;
};

double err_at(double t, const void* c) {
  const auto* ctx = static_cast<const FdCtx*>(c);
  SystemParams params;
  return error_sum_pure(ctx->pair, {ctx->w, t}, params);
}

TEST(ErrorDerivative, MatchesFiniteDifferences) {
  for (const PowerPair pair : {PowerPair{2.0, 2.0}, PowerPair{0.3, 1.1}, PowerPair{2.9, 0.05}}) {
    for (int w : {1, 4, 16}) {
      const FdCtx ctx{pair, w};
      const auto mu = HypothesisMeans::of(pair, 1.0);
      const double h = 0.02 * mu.mu0 / std::sqrt(200.0 * w);
      for (double frac : {0.2, 0.5, 0.8, 1.0, 1.3}) {
        const double t = mu.mu0 + frac * (mu.mu1 - mu.mu0);
        const double fd = five_point(&err_at, &ctx, t, h);
        const double an = error_derivative(t, pair, w, 200, 1.0);
        EXPECT_NEAR(an, fd, std::max(1e-6, 1e-4 * std::abs(an))) << w << " " << t;
      }
    }
  }
}

TEST(ScaleInvariance, JointScalingLeavesErrorsUnchanged) {
  for (double c : {0.1, 10.0}) {
    for (int w : {1, 4}) {
      for (double t : {2.5, 3.8312, 4.4}) {
        const double pfa = pfa_pure(2.0, w, t, 200, 1.0);
        const double pmd = pmd_pure(2.0, 2.0, w, t, 200, 1.0);
        EXPECT_NEAR(pfa_pure(2.0 * c, w, t * c, 200, c), pfa, 1e-12 * pfa + 1e-300);
        EXPECT_NEAR(pmd_pure(2.0 * c, 2.0 * c, w, t * c, 200, c), pmd, 1e-12 * pmd + 1e-300);
      }
    }
  }
}

TEST(ArgminThreshold, TiesResolveToSmallestThreshold) {
  // P_A tiny: every threshold far above mu1 gives P_FA = 0 and P_MD = 1.
  const std::vector<double> grid{50.0, 60.0, 70.0};
  const auto r = argmin_threshold({1e-6, 0.0}, 1, 200, 1.0, grid);
  EXPECT_EQ(r.index, 0u);
  EXPECT_DOUBLE_EQ(r.t, 50.0);
}

}  // namespace
}  // namespace softfusion
