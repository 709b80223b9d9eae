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

// Constructive covertness guarantee against any finite FC mixed strategy.
//
// For a pair with means mu0 < mu1 and slack s = 1 / sqrt(W_min N eps),
// Chebyshev's inequality forces P_FA + P_MD >= 1 - eps whenever the
// threshold lies outside [mu0 (1 - s), mu1 (1 + s)], for every W >= W_min.
// Stacking m outage-feasible pairs with pairwise disjoint intervals and
// randomizing uniformly over them leaves FC at most one pair per action, so
// the error exceeds 1 - eps with probability at least 1 - 1/m.

#ifndef SOFTFUSION_ROBUSTNESS_HPP_
#define SOFTFUSION_ROBUSTNESS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "softfusion/detection.hpp"
#include "softfusion/system.hpp"

namespace softfusion {

struct RobustInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t >= lo && t <= hi; }
};

struct PowerCaps {
  double alice = 1e4;
  double jammer = 1e4;
};

struct PlanRequest {
  std::size_t m = 10;
  double epsilon = 0.02;
  int w_min = 1;
  int n = 200;
  double tau = 0.407;
  double sigma_b2 = 1.0;
  double sigma_w2 = 1.0;
  double outage_target = 0.5;
  PowerCaps caps;
  double initial_jammer = 0.0;  // P_J of the first pair
  double safety_margin = 0.01;  // relative margin on the separation bound
};

struct RobustnessPlan {
  double epsilon = 0.0;
  std::size_t m = 0;
  int w_min = 1;
  int n = 1;
  double slack_factor = 0.0;  // sqrt(W_min N eps)
  double outage_target = 0.0;
  std::vector<PowerPair> pairs;
  std::vector<RobustInterval> intervals;
  std::vector<double> outages;
};

// [mu0 - mu0 / sqrt(w N eps), mu1 + mu1 / sqrt(w N eps)], lo clamped at 0.
RobustInterval robust_interval(const PowerPair& pair, int w, int n, double epsilon,
                               double sigma_w2);

// Smallest mu0 of the next pair whose interval starts to the right of an
// interval ending at mu1 (1 + s): mu1 (1 + s) / (1 - s). Requires s < 1.
double separation_bound(double mu1, double slack);

// Smallest P_A in (0, cap] with outage_pure <= target, by bisection;
// negative when even the cap is infeasible.
double min_feasible_alice_power(double p_j, double tau, double sigma_b2, double target,
                                double cap);

// Greedy recursion: each pair sits on the outage boundary and its jammer
// power is the smallest meeting the separation bound plus the margin.
// Throws InfeasiblePlanError carrying the largest m the caps allow.
RobustnessPlan construct_disjoint_pairs(const PlanRequest& request);

// True when intervals are strictly increasing and pairwise disjoint and
// every pair meets the outage target.
bool plan_is_valid(const RobustnessPlan& plan, double tau, double sigma_b2);

struct ExclusionCell {
  std::size_t pair = 0;
  std::size_t action = 0;
  double err_sum = 0.0;
  bool outside = false;    // threshold outside the pair's robust interval
  bool certified = false;  // err_sum >= 1 - eps
};

struct ExclusionTable {
  std::vector<ExclusionCell> cells;
  bool all_outside_certified = true;
  double min_outside_err_sum = 1.0;  // over cells with outside == true
};

// Exact Gamma-based error sums for every (pair, action). Actions with
// w < plan.w_min are rejected.
ExclusionTable verify_interval_exclusion(const RobustnessPlan& plan,
                                         std::span<const FcAction> actions, double sigma_w2);

// P(P_FA + P_MD >= 1 - eps) with Alice-Jammer uniform over the plan pairs
// and FC drawing actions[k] with probability probs[k].
double covertness_probability(const RobustnessPlan& plan, std::span<const FcAction> actions,
                              std::span<const double> probs, double sigma_w2);

struct AdversarialResult {
  double worst_probability = 1.0;
  FcAction action;
};

// Worst point-mass FC strategy over thresholds probing every interval
// (including each pair's t*) and every W in `w_set`.
AdversarialResult adversarial_point_mass_search(const RobustnessPlan& plan,
                                                std::span<const int> w_set,
                                                std::size_t probes_per_interval,
                                                double sigma_w2);

}  // namespace softfusion

#endif  // SOFTFUSION_ROBUSTNESS_HPP_
