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

// Zero-sum matrix games. The row player maximizes, the column player
// minimizes.
//
// Two solution paths share one certificate:
//  * dense: the payoff is materialized, mapped affinely into [1, 2] and the
//    classical LP  max 1'y  s.t.  B y <= 1, y >= 0  is solved with a tableau
//    simplex (Dantzig pricing, Bland's rule once pivots stall).
//  * iterative: for payoffs too large to materialize. Multiplicative-weights
//    play seeds a restricted game, then best responses are added until the
//    certificate closes (a double-oracle loop over dense sub-solves).
//
// The certificate is the best-response gap
//   max_r (A q)_r - min_c (p' A)_c  >= 0,
// which is zero exactly at an equilibrium.

#ifndef SOFTFUSION_LPSOLVE_HPP_
#define SOFTFUSION_LPSOLVE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace softfusion::lp {

class MatrixGame {
 public:
  virtual ~MatrixGame() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual double payoff(std::size_t r, std::size_t c) const = 0;

  // out[r] = sum_c A(r, c) q[c]. The default walks every entry.
  virtual void row_values(std::span<const double> col_strategy, std::span<double> out) const;
  // out[c] = sum_r p[r] A(r, c).
  virtual void col_values(std::span<const double> row_strategy, std::span<double> out) const;
};

class DenseMatrixGame final : public MatrixGame {
 public:
  DenseMatrixGame(std::size_t rows, std::size_t cols, std::vector<double> data);
  explicit DenseMatrixGame(const std::vector<std::vector<double>>& m);
  // Copies every entry of `game`.
  static DenseMatrixGame materialize(const MatrixGame& game);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  double payoff(std::size_t r, std::size_t c) const override { return data_[r * cols_ + c]; }
  void row_values(std::span<const double> col_strategy, std::span<double> out) const override;
  void col_values(std::span<const double> row_strategy, std::span<double> out) const override;

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class Method { kAuto, kDense, kIterative };
enum class Side { kRow, kColumn };

struct SolverOptions {
  Method method = Method::kAuto;
  double dense_tol = 1e-6;
  double iterative_tol = 1e-3;
  // kAuto switches to the iterative path above this rows * cols.
  std::size_t dense_cell_limit = 8'000'000;
  // Upper bound on a materialized payoff (and simplex tableau), bytes.
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
  std::size_t max_pivots = 200'000;
  std::size_t max_oracle_rounds = 5'000;
  std::size_t mwu_seed_iterations = 300;
};

struct ZeroSumSolution {
  double value = 0.0;  // p' A q
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double upper = 0.0;  // row best response against q
  double lower = 0.0;  // column best response against p
  double gap = 0.0;    // upper - lower
  double tol = 0.0;    // tolerance the gap was checked against
  std::string method;  // "dense" or "iterative"
  std::size_t iterations = 0;
};

// Throws SolverError (with the best gap seen) when the budget runs out or
// the certificate does not close; CapacityError when the dense path would
// exceed the memory budget.
ZeroSumSolution solve_zero_sum(const MatrixGame& game, const SolverOptions& options = {});
ZeroSumSolution solve_dense(const MatrixGame& game, const SolverOptions& options = {});
ZeroSumSolution solve_iterative(const MatrixGame& game, const SolverOptions& options = {});

// Best pure-deviation value against a fixed opponent strategy. kRow: the
// row player's max over rows against a column strategy; kColumn: the column
// player's min over columns against a row strategy.
double best_response_value(const MatrixGame& game, std::span<const double> opponent_strategy,
                           Side side);

// Index of that best pure deviation (first on ties).
std::size_t best_response(const MatrixGame& game, std::span<const double> opponent_strategy,
                          Side side);

}  // namespace softfusion::lp

#endif  // SOFTFUSION_LPSOLVE_HPP_
