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

// Soft-fusion detection errors at the Fusion Center.
//
// With W active Wardens and blocklength N the fused statistic
// T = (1 / WN) sum |y|^2 is Gamma(WN, mu / WN) distributed, where mu is
// sigma_w2 + P_J under H0 and sigma_w2 + P_J + P_A under H1. Hence
//   P_FA = Q(WN, WN t / mu0),   P_MD = 1 - Q(WN, WN t / mu1).

#ifndef SOFTFUSION_DETECTION_HPP_
#define SOFTFUSION_DETECTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "softfusion/strategy.hpp"
#include "softfusion/system.hpp"

namespace softfusion {

struct FcAction {
  int w = 1;       // active Warden count
  double t = 1.0;  // threshold, mW
};

class FcActionSpace {
 public:
  FcActionSpace(std::vector<int> w_set, std::vector<double> thresholds);

  const std::vector<int>& w_set() const { return w_set_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  std::size_t w_count() const { return w_set_.size(); }
  std::size_t threshold_count() const { return thresholds_.size(); }
  std::size_t size() const { return w_set_.size() * thresholds_.size(); }
  // Flat index k = w_slot * threshold_count + m.
  FcAction action(std::size_t k) const {
    return {w_set_[k / thresholds_.size()], thresholds_[k % thresholds_.size()]};
  }

 private:
  std::vector<int> w_set_;
  std::vector<double> thresholds_;
};

struct HypothesisMeans {
  double mu0;  // sigma_w2 + P_J
  double mu1;  // sigma_w2 + P_J + P_A

  static HypothesisMeans of(const PowerPair& pair, double sigma_w2);
};

double pfa_pure(double p_j, int w, double t, int n, double sigma_w2);
double pmd_pure(double p_a, double p_j, int w, double t, int n, double sigma_w2);
double error_sum_pure(const PowerPair& pair, const FcAction& action, const SystemParams& params);

// ln(P_FA + P_MD), finite where the sum underflows (well separated means at
// large WN). Used for argmin sweeps.
double log_error_sum_pure(const PowerPair& pair, const FcAction& action, int n, double sigma_w2);

// Averages over both mixed strategies.
double pfa_avg(const AliceJammerStrategy& aj, const FcStrategy& fc, const PowerGrid& grid,
               const FcActionSpace& space, const SystemParams& params);
double pmd_avg(const AliceJammerStrategy& aj, const FcStrategy& fc, const PowerGrid& grid,
               const FcActionSpace& space, const SystemParams& params);

// Unique minimizer of P_FA + P_MD over t, for every W:
//   t* = mu0 mu1 ln(mu1 / mu0) / P_A.
double optimal_threshold(const PowerPair& pair, double sigma_w2);

// d/dt (P_FA + P_MD) = f_b(t) - f_a(t), where f_c is the density of
// Gamma(WN, rate c) with a = WN / mu0, b = WN / mu1.
double error_derivative(double t, const PowerPair& pair, int w, int n, double sigma_w2);

// Sign and log-magnitude of the same derivative. The sign stays exact when
// both densities underflow.
struct LogSigned {
  int sign;        // -1, 0, +1
  double log_abs;  // ln |value|; -inf when sign == 0
};
LogSigned error_derivative_log(double t, const PowerPair& pair, int w, int n, double sigma_w2);

struct ThresholdArgmin {
  std::size_t index;
  double t;
  double log_error_sum;
};

// Grid argmin of P_FA + P_MD; ties go to the smallest t.
ThresholdArgmin argmin_threshold(const PowerPair& pair, int w, int n, double sigma_w2,
                                 std::span<const double> thresholds);

}  // namespace softfusion

#endif  // SOFTFUSION_DETECTION_HPP_
