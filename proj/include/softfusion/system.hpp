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

// System parameters, power grids, and Bob's reliability metrics.

#ifndef SOFTFUSION_SYSTEM_HPP_
#define SOFTFUSION_SYSTEM_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "softfusion/strategy.hpp"

namespace softfusion {

struct SystemParams {
  int n = 200;               // channel uses per block
  double sigma_b2 = 1.0;     // Bob noise variance, mW
  double sigma_w2 = 1.0;     // Warden noise variance, mW
  double rate = 0.4;         // target rate R_T, bits per use
  double upsilon = 0.1;      // decoding error probability
  double alpha = 0.1;        // per-Warden deployment cost weight
  double beta = 1.0;         // detection-error weight

  // Throws DomainError on the first violated constraint.
  void validate() const;
};

// Inclusive arithmetic grid {min, min + h, ...} up to max. Levels are
// min + k * spacing, never accumulated.
struct LinearGrid {
  double min = 0.0;
  double max = 0.0;
  double spacing = 1.0;

  std::size_t count() const;
  std::vector<double> levels() const;
};

struct PowerPair {
  double p_a = 0.0;  // Alice power, mW
  double p_j = 0.0;  // Jammer power, mW
};

class PowerGrid {
 public:
  // Levels must be strictly increasing. Alice levels positive, Jammer
  // levels non-negative.
  PowerGrid(std::vector<double> alice_levels, std::vector<double> jammer_levels);
  static PowerGrid from_grids(const LinearGrid& alice, const LinearGrid& jammer);

  const std::vector<double>& alice_levels() const { return alice_; }
  const std::vector<double>& jammer_levels() const { return jammer_; }
  std::size_t alice_count() const { return alice_.size(); }
  std::size_t jammer_count() const { return jammer_.size(); }
  std::size_t pair_count() const { return alice_.size() * jammer_.size(); }
  PowerPair pair(std::size_t i, std::size_t j) const { return {alice_[i], jammer_[j]}; }

 private:
  std::vector<double> alice_;
  std::vector<double> jammer_;
};

// SINR threshold tau solving
//   R_T = log2(1 + tau) - sqrt(1 / (N (1 + tau)^2)) Q^{-1}(upsilon) / ln 2
// by bisection on [1e-9, 1e6]. Throws InfeasibleRateError without a root.
double sinr_threshold(const SystemParams& params);

// Residual of the rate equation at tau; used to check the root.
double rate_residual(const SystemParams& params, double tau);

// P(|h_ab|^2 P_A / (sigma_b2 + |h_jb|^2 P_J) < tau) under unit-mean Rayleigh
// fading: 1 - exp(-tau sigma_b2 / P_A) / (1 + tau P_J / P_A).
double outage_pure(const PowerPair& pair, double tau, double sigma_b2);

// Outage averaged over pi^{A,J}.
double outage_mixed(const AliceJammerStrategy& strategy, const PowerGrid& grid, double tau,
                    double sigma_b2);

// All (i, j) whose pure outage does not exceed `target`.
std::vector<std::pair<std::size_t, std::size_t>> outage_feasible_set(const PowerGrid& grid,
                                                                     double tau,
                                                                     double sigma_b2,
                                                                     double target);

}  // namespace softfusion

#endif  // SOFTFUSION_SYSTEM_HPP_
