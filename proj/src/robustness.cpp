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

#include "softfusion/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "softfusion/errors.hpp"

namespace softfusion {
namespace {

constexpr int kBisectionSteps = 200;

double slack(int w, int n, double epsilon) {
  return 1.0 / std::sqrt(static_cast<double>(w) * n * epsilon);
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

bool covert(const RobustnessPlan& plan, std::size_t i, const FcAction& a, double sigma_w2) {
  const SystemParams p{.n = plan.n, .sigma_w2 = sigma_w2};
  return error_sum_pure(plan.pairs[i], a, p) >= 1.0 - plan.epsilon;
}

}  // namespace

RobustInterval robust_interval(const PowerPair& pair, int w, int n, double epsilon,
                               double sigma_w2) {
  check_epsilon(epsilon);
  if (w < 1 || n < 1) throw DomainError("robust_interval: W and N must be positive");
  const HypothesisMeans m = HypothesisMeans::of(pair, sigma_w2);
  const double s = slack(w, n, epsilon);
  return {std::max(0.0, m.mu0 - m.mu0 * s), m.mu1 + m.mu1 * s};
}

double separation_bound(double mu1, double slack_value) {
  if (!(slack_value < 1.0)) throw DomainError("separation needs slack below one");
  return mu1 * (1.0 + slack_value) / (1.0 - slack_value);
}

double min_feasible_alice_power(double p_j, double tau, double sigma_b2, double target,
                                double cap) {
  if (outage_pure({cap, p_j}, tau, sigma_b2) > target) return -1.0;
  double lo = 0.0;
  double hi = cap;
  for (int i = 0; i < kBisectionSteps && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && outage_pure({mid, p_j}, tau, sigma_b2) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

RobustnessPlan construct_disjoint_pairs(const PlanRequest& req) {
  check_epsilon(req.epsilon);
  if (req.m < 1) throw DomainError("plan needs m >= 1");
  if (req.w_min < 1 || req.n < 1) throw DomainError("plan needs positive W_min and N");
  if (!(req.caps.alice > 0.0) || !(req.caps.jammer > 0.0)) throw DomainError("power caps must be positive");
  if (!(req.outage_target > 0.0 && req.outage_target < 1.0)) {
    throw DomainError("outage target must lie in (0, 1)");
  }
  if (!(req.initial_jammer >= 0.0) || req.initial_jammer > req.caps.jammer) {
    throw DomainError("initial jammer power must lie in [0, cap]");
  }

  RobustnessPlan plan;
  plan.epsilon = req.epsilon;
  plan.w_min = req.w_min;
  plan.n = req.n;
  plan.slack_factor = std::sqrt(static_cast<double>(req.w_min) * req.n * req.epsilon);
  plan.outage_target = req.outage_target;
  const double s = 1.0 / plan.slack_factor;

  double p_j = req.initial_jammer;
  for (std::size_t i = 0; i < req.m; ++i) {
    if (i > 0) {
      if (!(s < 1.0)) {
        throw InfeasiblePlanError("W_min N eps <= 1: robust intervals reach zero and cannot be separated",
                                  plan.pairs.size());
      }
      const double mu1 = req.sigma_w2 + plan.pairs.back().p_j + plan.pairs.back().p_a;
      p_j = (1.0 + req.safety_margin) * separation_bound(mu1, s) - req.sigma_w2;
      if (p_j > req.caps.jammer) {
        throw InfeasiblePlanError("jammer cap reached after " + std::to_string(plan.pairs.size()) +
                                      " pairs (needs P_J = " + std::to_string(p_j) + " mW)",
                                  plan.pairs.size());
      }
    }
    const double p_a =
        min_feasible_alice_power(p_j, req.tau, req.sigma_b2, req.outage_target, req.caps.alice);
    if (p_a < 0.0) {
      throw InfeasiblePlanError("Alice cap cannot meet the outage target after " +
                                    std::to_string(plan.pairs.size()) + " pairs",
                                plan.pairs.size());
    }
    const PowerPair pair{p_a, p_j};
    plan.pairs.push_back(pair);
    plan.intervals.push_back(robust_interval(pair, req.w_min, req.n, req.epsilon, req.sigma_w2));
    plan.outages.push_back(outage_pure(pair, req.tau, req.sigma_b2));
  }
  plan.m = plan.pairs.size();
  return plan;
}

bool plan_is_valid(const RobustnessPlan& plan, double tau, double sigma_b2) {
  if (plan.pairs.size() != plan.m || plan.intervals.size() != plan.m) return false;
  for (std::size_t i = 0; i < plan.m; ++i) {
    if (!(plan.intervals[i].lo < plan.intervals[i].hi)) return false;
    if (i > 0 && !(plan.intervals[i - 1].hi < plan.intervals[i].lo)) return false;
    if (outage_pure(plan.pairs[i], tau, sigma_b2) > plan.outage_target) return false;
  }
  return true;
}

ExclusionTable verify_interval_exclusion(const RobustnessPlan& plan,
                                         std::span<const FcAction> actions, double sigma_w2) {
  ExclusionTable table;
  table.cells.reserve(plan.m * actions.size());
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (actions[k].w < plan.w_min) {
      throw DomainError("FC action uses fewer Wardens than the plan's W_min");
    }
  }
  const SystemParams p{.n = plan.n, .sigma_w2 = sigma_w2};
  for (std::size_t i = 0; i < plan.m; ++i) {
    for (std::size_t k = 0; k < actions.size(); ++k) {
      ExclusionCell cell;
      cell.pair = i;
      cell.action = k;
      cell.err_sum = error_sum_pure(plan.pairs[i], actions[k], p);
      cell.outside = !plan.intervals[i].contains(actions[k].t);
      cell.certified = cell.err_sum >= 1.0 - plan.epsilon;
      if (cell.outside) {
        table.min_outside_err_sum = std::min(table.min_outside_err_sum, cell.err_sum);
        if (!cell.certified) table.all_outside_certified = false;
      }
      table.cells.push_back(cell);
    }
  }
  return table;
}

double covertness_probability(const RobustnessPlan& plan, std::span<const FcAction> actions,
                              std::span<const double> probs, double sigma_w2) {
  if (actions.size() != probs.size()) throw ShapeError("actions and probabilities differ in length");
  if (plan.m == 0) throw DomainError("empty plan");
  double total = 0.0;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (probs[k] == 0.0) continue;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < plan.m; ++i) hits += covert(plan, i, actions[k], sigma_w2) ? 1 : 0;
    total += probs[k] * static_cast<double>(hits) / static_cast<double>(plan.m);
  }
  return total;
}

AdversarialResult adversarial_point_mass_search(const RobustnessPlan& plan,
                                                std::span<const int> w_set,
                                                std::size_t probes_per_interval,
                                                double sigma_w2) {
  AdversarialResult worst;
  const double one = 1.0;
  auto probe = [&](const FcAction& a) {
    const double p = covertness_probability(plan, std::span(&a, 1), std::span(&one, 1), sigma_w2);
    if (p < worst.worst_probability) worst = {p, a};
  };
  for (int w : w_set) {
    if (w < plan.w_min) continue;
    for (std::size_t i = 0; i < plan.m; ++i) {
      const RobustInterval& iv = plan.intervals[i];
      probe({w, optimal_threshold(plan.pairs[i], sigma_w2)});
      const double lo = std::max(iv.lo, 1e-12);
      for (std::size_t s = 0; s < probes_per_interval; ++s) {
        const double frac = (static_cast<double>(s) + 0.5) / static_cast<double>(probes_per_interval);
        probe({w, lo + frac * (iv.hi - lo)});
      }
    }
  }
  return worst;
}

}  // namespace softfusion
