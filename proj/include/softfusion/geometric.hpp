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

// Semi-strategic baseline: the Warden count follows a fixed finite-support
// geometric-shaped law and FC only randomizes its threshold.

#ifndef SOFTFUSION_GEOMETRIC_HPP_
#define SOFTFUSION_GEOMETRIC_HPP_

#include <vector>

#include "softfusion/game.hpp"

namespace softfusion {

struct GeometricDeployment {
  double p = 0.5;
  std::vector<int> support = {1, 4, 16, 64};
};

// Pr(W = w) proportional to (1 - p)^(w - 1) p over the support. Computed in
// log space, so tiny weights (w = 64 at p = 0.5) stay exact rather than
// flushing to zero.
std::vector<double> geometric_weights(const GeometricDeployment& dep);

// Equilibrium of the game where pi_FC(W, t) = Pr(W) pi(t) and FC chooses
// pi(t) only. Thresholds come from `space`; its Warden set is replaced by
// the deployment support.
GameSolution solve_restricted_equilibrium(const GeometricDeployment& dep, const PowerGrid& grid,
                                          const FcActionSpace& space, const SystemParams& params,
                                          double tau, const lp::SolverOptions& options = {});

}  // namespace softfusion

#endif  // SOFTFUSION_GEOMETRIC_HPP_
