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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softfusion/errors.hpp"
#include "softfusion/specfun.hpp"

namespace softfusion {
namespace {

double log_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (y == -std::numeric_limits<double>::infinity()) return x;
  return x + std::log1p(std::exp(y - x));
}

void check_shapes(const AliceJammerStrategy& aj, const FcStrategy& fc, const PowerGrid& grid,
                  const FcActionSpace& space) {
  if (aj.alice_count() != grid.alice_count() || aj.jammer_count() != grid.jammer_count()) {
    throw ShapeError("Alice-Jammer strategy shape does not match the power grid");
  }
  if (fc.w_count() != space.w_count() || fc.threshold_count() != space.threshold_count()) {
    throw ShapeError("FC strategy shape does not match the action space");
  }
}

}  // namespace

FcActionSpace::FcActionSpace(std::vector<int> w_set, std::vector<double> thresholds)
    : w_set_(std::move(w_set)), thresholds_(std::move(thresholds)) {
  if (w_set_.empty() || thresholds_.empty()) throw DomainError("FC action space must be non-empty");
  for (std::size_t k = 0; k < w_set_.size(); ++k) {
    if (w_set_[k] < 1) throw DomainError("Warden counts must be positive");
    if (k > 0 && w_set_[k] <= w_set_[k - 1]) throw DomainError("Warden counts must be strictly increasing");
  }
  for (std::size_t k = 0; k < thresholds_.size(); ++k) {
    if (!(thresholds_[k] > 0.0) || !std::isfinite(thresholds_[k])) {
      throw DomainError("thresholds must be positive");
    }
    if (k > 0 && !(thresholds_[k] > thresholds_[k - 1])) {
      throw DomainError("thresholds must be strictly increasing");
    }
  }
}

HypothesisMeans HypothesisMeans::of(const PowerPair& pair, double sigma_w2) {
  return {sigma_w2 + pair.p_j, sigma_w2 + pair.p_j + pair.p_a};
}

double pfa_pure(double p_j, int w, double t, int n, double sigma_w2) {
  const double k = static_cast<double>(w) * n;
  return specfun::reg_upper_gamma(k, k * t / (sigma_w2 + p_j));
}

double pmd_pure(double p_a, double p_j, int w, double t, int n, double sigma_w2) {
  if (!(p_a > 0.0)) throw DomainError("pmd_pure: P_A must be positive");
  const double k = static_cast<double>(w) * n;
  return specfun::reg_lower_gamma(k, k * t / (sigma_w2 + p_j + p_a));
}

double error_sum_pure(const PowerPair& pair, const FcAction& action, const SystemParams& params) {
  return pfa_pure(pair.p_j, action.w, action.t, params.n, params.sigma_w2) +
         pmd_pure(pair.p_a, pair.p_j, action.w, action.t, params.n, params.sigma_w2);
}

double log_error_sum_pure(const PowerPair& pair, const FcAction& action, int n, double sigma_w2) {
  const HypothesisMeans m = HypothesisMeans::of(pair, sigma_w2);
  const double k = static_cast<double>(action.w) * n;
  const double log_fa = specfun::log_reg_upper_gamma(k, k * action.t / m.mu0);
  const double log_md = specfun::log_reg_lower_gamma(k, k * action.t / m.mu1);
  return log_add(log_fa, log_md);
}

double pfa_avg(const AliceJammerStrategy& aj, const FcStrategy& fc, const PowerGrid& grid,
               const FcActionSpace& space, const SystemParams& params) {
  check_shapes(aj, fc, grid, space);
  // The summand depends on the jammer level only; marginalize over Alice.
  const std::vector<double> jammer_weight = aj.inner_marginal();
  double total = 0.0;
  for (std::size_t j = 0; j < grid.jammer_count(); ++j) {
    if (jammer_weight[j] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) {
      const double pk = fc.flat()[k];
      if (pk == 0.0) continue;
      const FcAction a = space.action(k);
      inner += pk * pfa_pure(grid.jammer_levels()[j], a.w, a.t, params.n, params.sigma_w2);
    }
    total += jammer_weight[j] * inner;
  }
  return total;
}

double pmd_avg(const AliceJammerStrategy& aj, const FcStrategy& fc, const PowerGrid& grid,
               const FcActionSpace& space, const SystemParams& params) {
  check_shapes(aj, fc, grid, space);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.alice_count(); ++i) {
    for (std::size_t j = 0; j < grid.jammer_count(); ++j) {
      const double pij = aj(i, j);
      if (pij == 0.0) continue;
      const PowerPair pair = grid.pair(i, j);
      double inner = 0.0;
      for (std::size_t k = 0; k < space.size(); ++k) {
        const double pk = fc.flat()[k];
        if (pk == 0.0) continue;
        const FcAction a = space.action(k);
        inner += pk * pmd_pure(pair.p_a, pair.p_j, a.w, a.t, params.n, params.sigma_w2);
      }
      total += pij * inner;
    }
  }
  return total;
}

double optimal_threshold(const PowerPair& pair, double sigma_w2) {
  if (!(pair.p_a > 0.0)) throw DomainError("optimal_threshold: P_A must be positive");
  const HypothesisMeans m = HypothesisMeans::of(pair, sigma_w2);
  // ln(mu1 / mu0) = log1p(P_A / mu0) keeps small P_A accurate.
  return m.mu0 * m.mu1 * std::log1p(pair.p_a / m.mu0) / pair.p_a;
}

LogSigned error_derivative_log(double t, const PowerPair& pair, int w, int n, double sigma_w2) {
  if (!(t > 0.0)) throw DomainError("error_derivative: t must be positive");
  const HypothesisMeans m = HypothesisMeans::of(pair, sigma_w2);
  const double k = static_cast<double>(w) * n;
  const double a = k / m.mu0;
  const double b = k / m.mu1;
  // ln f_c(t) = ln c + ln g(k, c t), g the unit-rate Gamma density.
  const double log_fa = std::log(a) + specfun::log_gamma_density(k, a * t);
  const double log_fb = std::log(b) + specfun::log_gamma_density(k, b * t);
  // ln f_b - ln f_a = k ln(b / a) + (a - b) t, evaluated without the large
  // common terms.
  const double diff = -k * std::log1p(pair.p_a / m.mu0) + (a - b) * t;
  if (diff == 0.0) return {0, -std::numeric_limits<double>::infinity()};
  if (diff > 0.0) return {+1, log_fb + std::log(-std::expm1(-diff))};
  return {-1, log_fa + std::log(-std::expm1(diff))};
}

double error_derivative(double t, const PowerPair& pair, int w, int n, double sigma_w2) {
  const LogSigned d = error_derivative_log(t, pair, w, n, sigma_w2);
  if (d.sign == 0) return 0.0;
  return d.sign * std::exp(d.log_abs);
}

ThresholdArgmin argmin_threshold(const PowerPair& pair, int w, int n, double sigma_w2,
                                 std::span<const double> thresholds) {
  if (thresholds.empty()) throw DomainError("argmin_threshold: empty threshold grid");
  ThresholdArgmin best{0, thresholds[0], std::numeric_limits<double>::infinity()};
  for (std::size_t m = 0; m < thresholds.size(); ++m) {
    const double v = log_error_sum_pure(pair, {w, thresholds[m]}, n, sigma_w2);
    if (v < best.log_error_sum) best = {m, thresholds[m], v};
  }
  return best;
}

}  // namespace softfusion
