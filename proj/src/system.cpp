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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "softfusion/errors.hpp"
#include "softfusion/specfun.hpp"

namespace softfusion {
namespace {

constexpr double kTauLow = 1e-9;
constexpr double kTauHigh = 1e6;
constexpr double kTauTolerance = 1e-12;

void check_strictly_increasing(const std::vector<double>& v, double floor, bool allow_floor,
                               const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + " levels must be non-empty");
  for (std::size_t k = 0; k < v.size(); ++k) {
    const bool ok = std::isfinite(v[k]) && (allow_floor ? v[k] >= floor : v[k] > floor);
    if (!ok) throw DomainError(std::string(what) + " level out of range: " + std::to_string(v[k]));
    if (k > 0 && !(v[k] > v[k - 1])) {
      throw DomainError(std::string(what) + " levels must be strictly increasing");
    }
  }
}

}  // namespace

void SystemParams::validate() const {
  if (n < 1) throw DomainError("N must be at least 1");
  if (!(sigma_b2 > 0.0) || !std::isfinite(sigma_b2)) throw DomainError("sigma_b2 must be positive");
  if (!(sigma_w2 > 0.0) || !std::isfinite(sigma_w2)) throw DomainError("sigma_w2 must be positive");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("R_T must be positive");
  if (!(upsilon > 0.0 && upsilon < 1.0)) throw DomainError("upsilon must lie in (0, 1)");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be non-negative");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be non-negative");
}

std::size_t LinearGrid::count() const {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("grid spacing must be positive");
  if (!(max >= min) || !std::isfinite(min) || !std::isfinite(max)) {
    throw DomainError("grid max must not be below min");
  }
  // Relative slack so that e.g. [0.01, 6] at 0.01 includes 6.
  return static_cast<std::size_t>(std::floor((max - min) / spacing * (1.0 + 1e-12) + 1e-9)) + 1;
}

std::vector<double> LinearGrid::levels() const {
  const std::size_t k = count();
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = min + static_cast<double>(i) * spacing;
  return out;
}

PowerGrid::PowerGrid(std::vector<double> alice_levels, std::vector<double> jammer_levels)
    : alice_(std::move(alice_levels)), jammer_(std::move(jammer_levels)) {
  check_strictly_increasing(alice_, 0.0, false, "Alice");
  check_strictly_increasing(jammer_, 0.0, true, "Jammer");
}

PowerGrid PowerGrid::from_grids(const LinearGrid& alice, const LinearGrid& jammer) {
  return {alice.levels(), jammer.levels()};
}

double rate_residual(const SystemParams& params, double tau) {
  const double penalty = std::sqrt(1.0 / (params.n * (1.0 + tau) * (1.0 + tau))) *
                         specfun::inv_qfunc(params.upsilon) / std::numbers::ln2;
  return std::log2(1.0 + tau) - penalty - params.rate;
}

double sinr_threshold(const SystemParams& params) {
  params.validate();
  double lo = kTauLow;
  double hi = kTauHigh;
  double f_lo = rate_residual(params, lo);
  const double f_hi = rate_residual(params, hi);
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw InfeasibleRateError("rate equation has no root in (1e-9, 1e6) for R_T = " +
                              std::to_string(params.rate));
  }
  while (hi - lo > kTauTolerance * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = rate_residual(params, mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double outage_pure(const PowerPair& pair, double tau, double sigma_b2) {
  if (!(pair.p_a > 0.0) || !(pair.p_j >= 0.0)) throw DomainError("outage_pure: invalid power pair");
  if (!(tau > 0.0) || !(sigma_b2 > 0.0)) throw DomainError("outage_pure: tau and sigma_b2 must be positive");
  const double success = std::exp(-tau * sigma_b2 / pair.p_a) / (1.0 + tau * pair.p_j / pair.p_a);
  return 1.0 - success;
}

double outage_mixed(const AliceJammerStrategy& strategy, const PowerGrid& grid, double tau,
                    double sigma_b2) {
  if (strategy.alice_count() != grid.alice_count() ||
      strategy.jammer_count() != grid.jammer_count()) {
    throw ShapeError("Alice-Jammer strategy shape does not match the power grid");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < grid.alice_count(); ++i) {
    for (std::size_t j = 0; j < grid.jammer_count(); ++j) {
      const double w = strategy(i, j);
      if (w != 0.0) total += w * outage_pure(grid.pair(i, j), tau, sigma_b2);
    }
  }
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> outage_feasible_set(const PowerGrid& grid,
                                                                     double tau,
                                                                     double sigma_b2,
                                                                     double target) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < grid.alice_count(); ++i) {
    for (std::size_t j = 0; j < grid.jammer_count(); ++j) {
      if (outage_pure(grid.pair(i, j), tau, sigma_b2) <= target) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace softfusion
