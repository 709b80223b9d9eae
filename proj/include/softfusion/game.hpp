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

// The Alice-Jammer vs. Fusion Center zero-sum game.
//
// Utility (Alice-Jammer maximize, FC minimizes):
//   U(i, j; W, t) = 1 - P_out(i, j) + beta (P_FA + P_MD)(i, j, W, t) + alpha W.
//
// The detection tensor is stored factorized: P_FA depends on the jammer level
// only and P_MD on mu1 = sigma_w2 + P_J + P_A, which takes at most I + J - 1
// distinct values on arithmetic grids. Entries are recombined on demand, so
// the I*J*|W|*M tensor is never materialized unless the dense solver asks
// for it.

#ifndef SOFTFUSION_GAME_HPP_
#define SOFTFUSION_GAME_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "softfusion/detection.hpp"
#include "softfusion/lpsolve.hpp"
#include "softfusion/strategy.hpp"
#include "softfusion/system.hpp"

namespace softfusion {

class PayoffDecomposition {
 public:
  std::size_t pair_count() const { return reliability_.size(); }
  std::size_t action_count() const { return cost_.size(); }
  // Logical size I * J * (columns) of the detection tensor.
  std::size_t detection_size() const { return pair_count() * action_count(); }
  // Doubles actually stored.
  std::size_t stored_bytes() const;

  const PowerGrid& grid() const { return grid_; }
  // Action space the FC strategy is reported on. For a restricted payoff
  // the columns are thresholds only and `w_weights()` is the fixed marginal.
  const FcActionSpace& space() const { return space_; }
  const std::vector<double>& w_weights() const { return w_weights_; }
  bool restricted() const { return !w_weights_.empty(); }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double tau() const { return tau_; }

  // 1 - P_out(i, j), pair index i * J + j.
  double reliability(std::size_t pair) const { return reliability_[pair]; }
  double pfa(std::size_t pair, std::size_t k) const {
    return pfa_[(pair % jammer_count_) * action_count() + k];
  }
  double pmd(std::size_t pair, std::size_t k) const {
    return pmd_[mean_class_[pair] * action_count() + k];
  }
  double detection(std::size_t pair, std::size_t k) const { return pfa(pair, k) + pmd(pair, k); }
  // W for column k (E[W] under the fixed marginal when restricted).
  double cost(std::size_t k) const { return cost_[k]; }

  double entry(std::size_t pair, std::size_t k) const {
    return reliability(pair) + beta_ * detection(pair, k) + alpha_ * cost(k);
  }

  std::size_t mean_class_count() const { return pmd_.size() / action_count(); }

 private:
  friend PayoffDecomposition build_payoff(const PowerGrid&, const FcActionSpace&,
                                          const SystemParams&, double, std::size_t);
  friend PayoffDecomposition restrict_payoff(const PayoffDecomposition&, std::span<const double>);
  friend class PayoffGame;

  PayoffDecomposition(PowerGrid grid, FcActionSpace space)
      : grid_(std::move(grid)), space_(std::move(space)) {}

  PowerGrid grid_;
  FcActionSpace space_;
  std::vector<double> w_weights_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double tau_ = 0.0;
  std::size_t jammer_count_ = 0;
  std::vector<double> reliability_;     // [pair]
  std::vector<double> pfa_;             // [j * K + k]
  std::vector<double> pmd_;             // [class * K + k]
  std::vector<std::size_t> mean_class_; // [pair] -> class
  std::vector<double> cost_;            // [k]
};

inline constexpr std::size_t kDefaultPayoffBudget = std::size_t{1} << 30;

// Throws CapacityError when the factorized tables exceed `memory_budget`.
PayoffDecomposition build_payoff(const PowerGrid& grid, const FcActionSpace& space,
                                 const SystemParams& params, double tau,
                                 std::size_t memory_budget = kDefaultPayoffBudget);

// The same game with the Warden-count marginal fixed to `w_weights`; columns
// become thresholds, each averaged over W.
PayoffDecomposition restrict_payoff(const PayoffDecomposition& full,
                                    std::span<const double> w_weights);

// Matrix-game view of a decomposition: rows are pairs, columns actions.
class PayoffGame final : public lp::MatrixGame {
 public:
  explicit PayoffGame(const PayoffDecomposition& payoff) : p_(payoff) {}
  std::size_t rows() const override { return p_.pair_count(); }
  std::size_t cols() const override { return p_.action_count(); }
  double payoff(std::size_t r, std::size_t c) const override { return p_.entry(r, c); }
  void row_values(std::span<const double> col_strategy, std::span<double> out) const override;
  void col_values(std::span<const double> row_strategy, std::span<double> out) const override;

 private:
  const PayoffDecomposition& p_;
};

struct GameMetrics {
  double expected_w = 0.0;
  double pfa = 0.0;
  double pmd = 0.0;
  double err_sum = 0.0;
  double pout = 0.0;
  double one_minus_pout = 0.0;
};

struct GameSolution {
  double value = 0.0;
  AliceJammerStrategy aj;
  FcStrategy fc;  // over the full (W, t) space, product form when restricted
  double gap = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double tol = 0.0;
  std::string method;
  std::size_t iterations = 0;
  GameMetrics metrics;
};

GameSolution solve_equilibrium(const PayoffDecomposition& payoff,
                               const lp::SolverOptions& options = {});

// Metrics of an arbitrary strategy pair, read from the decomposition.
GameMetrics evaluate_metrics(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj,
                             const FcStrategy& fc);

// Expected utility of a strategy pair.
double expected_utility(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj,
                        const FcStrategy& fc);

double expected_wardens(const FcStrategy& fc, const FcActionSpace& space);

// Best pure deviation: against an FC strategy, Alice-Jammer's maximum over
// pairs; against an Alice-Jammer strategy, FC's minimum over actions.
double best_response_value(const PayoffDecomposition& payoff, const FcStrategy& fc);
double best_response_value(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj);

// (distribution over W slots, distribution over threshold slots)
std::pair<std::vector<double>, std::vector<double>> marginals(const FcStrategy& fc);

}  // namespace softfusion

#endif  // SOFTFUSION_GAME_HPP_
