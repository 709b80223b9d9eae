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

#include "softfusion/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "softfusion/errors.hpp"

namespace softfusion {

std::vector<double> geometric_weights(const GeometricDeployment& dep) {
  if (!(dep.p > 0.0 && dep.p < 1.0)) {
    throw DomainError("geometric deployment needs p in (0, 1), got " + std::to_string(dep.p));
  }
  if (dep.support.empty()) throw DomainError("geometric deployment needs a non-empty support");
  for (std::size_t k = 0; k < dep.support.size(); ++k) {
    if (dep.support[k] < 1 || (k > 0 && dep.support[k] <= dep.support[k - 1])) {
      throw DomainError("geometric support must be strictly increasing positive integers");
    }
  }
  // The common factor p cancels in the normalization.
  const double log_keep = std::log1p(-dep.p);
  std::vector<double> logw(dep.support.size());
  for (std::size_t k = 0; k < logw.size(); ++k) logw[k] = (dep.support[k] - 1) * log_keep;
  const double peak = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  std::vector<double> w(logw.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(logw[k] - peak);
    total += w[k];
  }
  for (double& x : w) x /= total;
  return w;
}

GameSolution solve_restricted_equilibrium(const GeometricDeployment& dep, const PowerGrid& grid,
                                          const FcActionSpace& space, const SystemParams& params,
                                          double tau, const lp::SolverOptions& options) {
  const std::vector<double> weights = geometric_weights(dep);
  const FcActionSpace restricted_space(dep.support, space.thresholds());
  const PayoffDecomposition full = build_payoff(grid, restricted_space, params, tau);
  const PayoffDecomposition restricted = restrict_payoff(full, weights);
  return solve_equilibrium(restricted, options);
}

}  // namespace softfusion
