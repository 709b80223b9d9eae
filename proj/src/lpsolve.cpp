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

#include "softfusion/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "softfusion/errors.hpp"
#include "softfusion/kernels.hpp"

namespace softfusion::lp {
namespace {

constexpr double kCostEps = 1e-11;
constexpr double kPivotEps = 1e-9;
constexpr double kFeasEps = 1e-9;
constexpr double kMergeResolution = 1e-12;
constexpr double kHarrisDelta = 1e-11;
// Bland mode only pivots on elements at least this share of the largest.
constexpr double kBlandPivotShare = 1e-3;
constexpr double kDegenerateRhs = 1e-14;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr std::size_t kStallLimit = 50;
// Tableau rebuilds from the original data once pricing stops.
constexpr std::size_t kMaxReinversions = 4;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// max 1'y  s.t.  B y <= 1, y >= 0, B strictly positive (m x n, row-major).
struct PackingLp {
  std::vector<double> primal;  // y, size n
  std::vector<double> dual;    // size m
  std::size_t pivots = 0;
};

template <typename T>
class Tableau {
 public:
  Tableau(const std::vector<double>& b, std::size_t m, std::size_t n)
      : b_(b), m_(m), n_(n), width_(n + m + 1), tab_((m + 1) * width_, 0.0), basis_(m) {
    for (std::size_t r = 0; r < m; ++r) {
      T* row = tab_.data() + r * width_;
      std::copy_n(b.data() + r * n, n, row);
      row[n + r] = 1.0;
      row[rhs()] = 1.0;
      basis_[r] = n + r;
    }
    std::fill_n(obj(), n, -1.0);
  }

  std::size_t rhs() const { return n_ + m_; }
  T* row(std::size_t r) { return tab_.data() + r * width_; }
  T* obj() { return row(m_); }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  void pivot(std::size_t leave, std::size_t enter) {
    T* prow = row(leave);
    const T inv = T{1} / prow[enter];
    for (std::size_t c = 0; c < width_; ++c) prow[c] *= inv;
    prow[enter] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == leave) continue;
      T* other = row(r);
      const T f = other[enter];
      if (f == T{0}) continue;
      if constexpr (std::is_same_v<T, double>) {
        kernels::active_kernels().axpy(-f, prow, other, width_);
      } else {
        for (std::size_t c = 0; c < width_; ++c) other[c] -= f * prow[c];
      }
      other[enter] = 0.0;
    }
    basis_[leave] = enter;
  }

  // Rebuilds [B_B^-1 [B | I | 1]] and the objective row from the original
  // data, discarding drift accumulated by pivoting.
  void reinvert() {
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RowMat bm = Eigen::Map<const RowMajor>(b_.data(), m_, n_).template cast<T>();
    Mat basic(m_, m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) {
        basic.col(r) = bm.col(basis_[r]);
      } else {
        basic.col(r).setZero();
        basic(basis_[r] - n_, r) = 1.0;
      }
    }
    RowMat full(m_, width_);
    full.leftCols(n_) = bm;
    full.middleCols(n_, m_).setIdentity();
    full.col(rhs()).setOnes();
    Eigen::Map<RowMat> body(tab_.data(), m_, width_);
    body = Eigen::PartialPivLU<Mat>(basic).solve(full);
    Eigen::Matrix<T, 1, Eigen::Dynamic> cost_basic(m_);
    for (std::size_t r = 0; r < m_; ++r) cost_basic(r) = basis_[r] < n_ ? T{1} : T{0};
    Eigen::Map<Eigen::Matrix<T, 1, Eigen::Dynamic>> o(obj(), width_);
    o = cost_basic * body;
    o.head(n_).array() -= T{1};
    for (std::size_t r = 0; r < m_; ++r) {
      body.col(basis_[r]).setZero();
      body(r, basis_[r]) = T{1};
      o(basis_[r]) = T{0};
    }
  }

 private:
  const std::vector<double>& b_;
  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<T> tab_;
  std::vector<std::size_t> basis_;
};

[[noreturn]] void pivot_budget_exhausted(std::size_t pivots) {
  throw SolverError("simplex pivot budget exhausted after " + std::to_string(pivots) + " pivots",
                    std::numeric_limits<double>::infinity());
}

// Dual simplex pivots until every basic variable is non-negative. The
// objective row stays dual feasible throughout. Returns the pivot count.
template <typename T>
std::size_t restore_feasibility(Tableau<T>& tab, std::size_t m, std::size_t max_pivots,
                         std::size_t& pivots) {
  const std::size_t rhs = tab.rhs();
  const T* obj = tab.obj();
  const std::size_t start = pivots;
  for (;;) {
    std::size_t leave = m;
    T worst = -kFeasEps;
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.row(r)[rhs] < worst) {
        worst = tab.row(r)[rhs];
        leave = r;
      }
    }
    if (leave == m) return pivots - start;
    const T* lrow = tab.row(leave);
    T bound = std::numeric_limits<T>::infinity();
    for (std::size_t c = 0; c < rhs; ++c) {
      if (lrow[c] >= -kPivotEps) continue;
      bound = std::min(bound, (std::max(T{0}, obj[c]) + kHarrisDelta) / -lrow[c]);
    }
    std::size_t in = rhs;
    for (std::size_t c = 0; c < rhs; ++c) {
      if (lrow[c] >= -kPivotEps) continue;
      if (std::max(T{0}, obj[c]) / -lrow[c] > bound) continue;
      if (in == rhs || lrow[c] < lrow[in]) in = c;
    }
    if (in == rhs) {
      throw SolverError("dual simplex found the packing LP infeasible",
                        std::numeric_limits<double>::infinity());
    }
    if (pivots >= max_pivots) pivot_budget_exhausted(pivots);
    if (pivots - start > 2 * m) {
      throw SolverError("simplex lost primal feasibility after reinversion",
                        std::numeric_limits<double>::infinity());
    }
    tab.pivot(leave, in);
    ++pivots;
  }
}

template <typename T>
PackingLp solve_packing_lp(const std::vector<double>& b, std::size_t m, std::size_t n,
                           std::size_t max_pivots) {
  Tableau<T> tab(b, m, n);
  const std::size_t rhs = tab.rhs();
  T* obj = tab.obj();

  PackingLp out;
  std::size_t stalled = 0;
  std::size_t reinversions = 0;
  std::size_t since_reinversion = 0;
  const std::size_t reinversion_period = std::max<std::size_t>(64, m);
  bool fresh = true;
  for (;;) {
    // Primal simplex: entering column.
    std::size_t enter = rhs;
    if (stalled < kStallLimit) {
      T most = -kCostEps;
      for (std::size_t c = 0; c < rhs; ++c) {
        if (obj[c] < most) {
          most = obj[c];
          enter = c;
        }
      }
    } else {
      for (std::size_t c = 0; c < rhs; ++c) {
        if (obj[c] < -kCostEps) {
          enter = c;
          break;
        }
      }
    }

    const bool periodic = since_reinversion >= reinversion_period;
    if (enter == rhs || periodic) {
      if (enter == rhs && (fresh || reinversions == kMaxReinversions)) break;
      tab.reinvert();
      since_reinversion = 0;
      if (!periodic) ++reinversions;
      fresh = restore_feasibility(tab, m, max_pivots, out.pivots) == 0;
      continue;
    }
    const bool fresh_at_pricing = fresh;
    fresh = false;
    if (out.pivots >= max_pivots) pivot_budget_exhausted(out.pivots);

    // Harris two-pass ratio test: bound the step with slightly relaxed
    // rows, then take the largest pivot among rows within that bound. In
    // Bland mode the smallest basic index wins among acceptable pivots.
    T bound = std::numeric_limits<T>::infinity();
    T amax = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const T a = tab.row(r)[enter];
      if (a <= kPivotEps) continue;
      bound = std::min(bound, std::max(T{0}, tab.row(r)[rhs] + kHarrisDelta) / a);
      amax = std::max(amax, a);
    }
    std::size_t leave = m;
    T best_ratio = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const T a = tab.row(r)[enter];
      if (a <= kPivotEps) continue;
      const T ratio = std::max(T{0}, tab.row(r)[rhs]) / a;
      if (ratio > bound) continue;
      bool take = leave == m;
      if (!take && stalled < kStallLimit) {
        take = a > tab.row(leave)[enter];
      } else if (!take) {
        take = a >= kBlandPivotShare * amax &&
               (tab.row(leave)[enter] < kBlandPivotShare * amax ||
                tab.basic(r) < tab.basic(leave));
      }
      if (take) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      // Impossible for a strictly positive B in exact arithmetic; rebuild
      // the tableau once before giving up.
      if (fresh_at_pricing) {
        throw SolverError("simplex found an unbounded direction",
                          std::numeric_limits<double>::infinity());
      }
      tab.reinvert();
      since_reinversion = 0;
      fresh = restore_feasibility(tab, m, max_pivots, out.pivots) == 0;
      continue;
    }
    stalled = best_ratio <= kDegenerateRhs ? stalled + 1 : 0;
    tab.pivot(leave, enter);
    ++out.pivots;
    ++since_reinversion;
  }

  out.primal.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) out.primal[tab.basic(r)] = static_cast<double>(std::max(T{0}, tab.row(r)[rhs]));
  }
  out.dual.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) out.dual[r] = static_cast<double>(std::max(T{0}, obj[n + r]));
  return out;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double& x : v) {
    if (!(x > 0.0)) x = 0.0;
    s += x;
  }
  if (s <= 0.0) {
    std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
    return;
  }
  for (double& x : v) x /= s;
}

// Fills value, bounds and gap from the game's own evaluation routines.
void certify(const MatrixGame& game, ZeroSumSolution& s) {
  std::vector<double> aq(game.rows());
  std::vector<double> pa(game.cols());
  game.row_values(s.col_strategy, aq);
  game.col_values(s.row_strategy, pa);
  s.upper = *std::max_element(aq.begin(), aq.end());
  s.lower = *std::min_element(pa.begin(), pa.end());
  s.gap = s.upper - s.lower;
  double v = 0.0;
  for (std::size_t r = 0; r < aq.size(); ++r) v += s.row_strategy[r] * aq[r];
  s.value = std::clamp(v, s.lower, s.upper);
}

// First index of every class of payoff-identical lines. Line i holds the
// entries a[i * line_stride + k * elem_stride], k < len, quantized to
// kMergeResolution of the payoff range.
std::vector<std::size_t> distinct_lines(const std::vector<double>& a, std::size_t count,
                                        std::size_t len, std::size_t line_stride,
                                        std::size_t elem_stride, double lo, double range) {
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<std::size_t> keep;
  std::vector<std::int64_t> key(len);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < len; ++k) {
      key[k] = std::llround((a[i * line_stride + k * elem_stride] - lo) / range / kMergeResolution);
    }
    if (seen.emplace(key, i).second) keep.push_back(i);
  }
  return keep;
}

std::size_t dense_bytes(std::size_t rows, std::size_t cols) {
  const std::size_t m = std::min(rows, cols);
  const std::size_t n = std::max(rows, cols);
  return sizeof(double) * (rows * cols + (m + 1) * (n + m + 1) + m * n);
}

// Subgame over selected rows and columns, read through the parent accessor.
class SubGame final : public MatrixGame {
 public:
  SubGame(const MatrixGame& parent, const std::vector<std::size_t>& rows,
          const std::vector<std::size_t>& cols)
      : rows_(rows.size()), cols_(cols.size()), data_(rows.size() * cols.size()) {
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = parent.payoff(rows[r], cols[c]);
    }
  }
  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  double payoff(std::size_t r, std::size_t c) const override { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

std::vector<std::size_t> top_indices(std::span<const double> weights, std::size_t count) {
  std::vector<std::size_t> idx(weights.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return weights[a] > weights[b] || (weights[a] == weights[b] && a < b);
                    });
  idx.resize(count);
  return idx;
}

// Optimistic multiplicative weights; returns the averaged strategies.
void mwu_seed(const MatrixGame& game, std::size_t iterations, std::vector<double>& p_avg,
              std::vector<double>& q_avg) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  std::vector<double> p(rows, 1.0 / static_cast<double>(rows));
  std::vector<double> q(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> row_score(rows, 0.0), col_score(cols, 0.0);
  std::vector<double> u(rows), v(cols);
  std::vector<double> rs(rows), cs(cols);
  p_avg.assign(rows, 0.0);
  q_avg.assign(cols, 0.0);
  double range = 0.0;
  const double log_n = std::log(static_cast<double>(std::max(rows, cols)) + 1.0);
  const double eta0 = std::sqrt(log_n / static_cast<double>(std::max<std::size_t>(iterations, 1)));

  auto softmax = [](const std::vector<double>& score, double sign, double eta, std::vector<double>& out) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double s : score) peak = std::max(peak, sign * s);
    double z = 0.0;
    for (std::size_t i = 0; i < score.size(); ++i) {
      out[i] = std::exp(eta * (sign * score[i] - peak));
      z += out[i];
    }
    for (double& x : out) x /= z;
  };

  for (std::size_t it = 0; it < iterations; ++it) {
    game.row_values(q, u);
    game.col_values(p, v);
    const auto [umin, umax] = std::minmax_element(u.begin(), u.end());
    const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
    range = std::max({range, *umax - *umin, *vmax - *vmin, 1e-12});
    const double eta = eta0 / range;
    for (std::size_t r = 0; r < rows; ++r) {
      row_score[r] += u[r];
      p_avg[r] += p[r];
    }
    for (std::size_t c = 0; c < cols; ++c) {
      col_score[c] += v[c];
      q_avg[c] += q[c];
    }
    // Optimistic step: the latest gradient is counted twice.
    for (std::size_t r = 0; r < rows; ++r) rs[r] = row_score[r] + u[r];
    for (std::size_t c = 0; c < cols; ++c) cs[c] = col_score[c] + v[c];
    softmax(rs, +1.0, eta, p);
    softmax(cs, -1.0, eta, q);
  }
  normalize(p_avg);
  normalize(q_avg);
}

}  // namespace

void MatrixGame::row_values(std::span<const double> col_strategy, std::span<double> out) const {
  for (std::size_t r = 0; r < rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols(); ++c) {
      if (col_strategy[c] != 0.0) s += payoff(r, c) * col_strategy[c];
    }
    out[r] = s;
  }
}

void MatrixGame::col_values(std::span<const double> row_strategy, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r) {
    const double w = row_strategy[r];
    if (w == 0.0) continue;
    for (std::size_t c = 0; c < cols(); ++c) out[c] += w * payoff(r, c);
  }
}

DenseMatrixGame::DenseMatrixGame(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw ShapeError("matrix game needs at least one row and column");
  if (data_.size() != rows_ * cols_) throw ShapeError("matrix game data size mismatch");
  for (double x : data_) {
    if (!std::isfinite(x)) throw DomainError("matrix game payoffs must be finite");
  }
}

DenseMatrixGame::DenseMatrixGame(const std::vector<std::vector<double>>& m)
    : DenseMatrixGame(m.size(), m.empty() ? 0 : m.front().size(), [&] {
        std::vector<double> flat;
        for (const auto& row : m) {
          if (row.size() != m.front().size()) throw ShapeError("ragged payoff matrix");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        return flat;
      }()) {}

DenseMatrixGame DenseMatrixGame::materialize(const MatrixGame& game) {
  std::vector<double> data(game.rows() * game.cols());
  for (std::size_t r = 0; r < game.rows(); ++r) {
    for (std::size_t c = 0; c < game.cols(); ++c) data[r * game.cols() + c] = game.payoff(r, c);
  }
  return {game.rows(), game.cols(), std::move(data)};
}

void DenseMatrixGame::row_values(std::span<const double> col_strategy, std::span<double> out) const {
  kernels::active_kernels().gemv(data_.data(), rows_, cols_, cols_, col_strategy.data(), out.data());
}

void DenseMatrixGame::col_values(std::span<const double> row_strategy, std::span<double> out) const {
  kernels::active_kernels().gemv_t(data_.data(), rows_, cols_, cols_, row_strategy.data(), out.data());
}

double best_response_value(const MatrixGame& game, std::span<const double> opponent_strategy,
                           Side side) {
  if (side == Side::kRow) {
    if (opponent_strategy.size() != game.cols()) throw ShapeError("column strategy size mismatch");
    std::vector<double> aq(game.rows());
    game.row_values(opponent_strategy, aq);
    return *std::max_element(aq.begin(), aq.end());
  }
  if (opponent_strategy.size() != game.rows()) throw ShapeError("row strategy size mismatch");
  std::vector<double> pa(game.cols());
  game.col_values(opponent_strategy, pa);
  return *std::min_element(pa.begin(), pa.end());
}

std::size_t best_response(const MatrixGame& game, std::span<const double> opponent_strategy,
                          Side side) {
  if (side == Side::kRow) {
    if (opponent_strategy.size() != game.cols()) throw ShapeError("column strategy size mismatch");
    std::vector<double> aq(game.rows());
    game.row_values(opponent_strategy, aq);
    for (double& x : aq) x = -x;
    return kernels::active_kernels().argmin(aq.data(), aq.size());
  }
  if (opponent_strategy.size() != game.rows()) throw ShapeError("row strategy size mismatch");
  std::vector<double> pa(game.cols());
  game.col_values(opponent_strategy, pa);
  return kernels::active_kernels().argmin(pa.data(), pa.size());
}

ZeroSumSolution solve_dense(const MatrixGame& game, const SolverOptions& options) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (rows == 0 || cols == 0) throw ShapeError("matrix game needs at least one row and column");
  const std::size_t need = dense_bytes(rows, cols);
  if (need > options.memory_budget_bytes) {
    throw CapacityError("dense solve needs " + std::to_string(need >> 20) +
                            " MiB, above the memory budget; use coarser grids or the iterative path",
                        need, options.memory_budget_bytes);
  }

  std::vector<double> a(rows * cols);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double x = game.payoff(r, c);
      if (!std::isfinite(x)) throw DomainError("matrix game payoffs must be finite");
      a[r * cols + c] = x;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }

  ZeroSumSolution s;
  s.method = "dense";
  s.tol = options.dense_tol;
  if (hi - lo <= 0.0) {
    s.row_strategy.assign(rows, 0.0);
    s.col_strategy.assign(cols, 0.0);
    s.row_strategy[0] = 1.0;
    s.col_strategy[0] = 1.0;
    certify(game, s);
    return s;
  }

  // Payoff-identical rows and columns make the tableau basis singular;
  // solve on one representative of each and give the others zero mass.
  const double range = hi - lo;
  const auto keep_rows = distinct_lines(a, rows, cols, cols, 1, lo, range);
  const auto keep_cols = distinct_lines(a, cols, rows, 1, cols, lo, range);
  const std::size_t nr = keep_rows.size();
  const std::size_t nc = keep_cols.size();

  // Affine map into [1, 2]: positive value, bounded tableau entries. The
  // smaller side becomes the constraint set; when rows dominate, solve the
  // transposed game -A' with the column player maximizing.
  const bool transposed = nr > nc;
  const std::size_t m = transposed ? nc : nr;
  const std::size_t n = transposed ? nr : nc;
  std::vector<double> b(m * n);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      const double x = a[keep_rows[r] * cols + keep_cols[c]];
      if (transposed) {
        b[c * nr + r] = (hi - x) / range + 1.0;
      } else {
        b[r * nc + c] = (x - lo) / range + 1.0;
      }
    }
  }

  // Double precision first; nearly dependent payoff columns can leave the
  // basis too ill-conditioned for it, so retry in extended precision.
  std::size_t pivots = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const bool extended : {false, true}) {
    PackingLp lp;
    try {
      lp = extended ? solve_packing_lp<long double>(b, m, n, options.max_pivots)
                    : solve_packing_lp<double>(b, m, n, options.max_pivots);
    } catch (const SolverError& e) {
      if (extended) {
        throw SolverError(e.what(), std::min(best_gap, e.best_gap()));
      }
      continue;
    }
    pivots += lp.pivots;
    const auto& p_small = transposed ? lp.primal : lp.dual;
    const auto& q_small = transposed ? lp.dual : lp.primal;
    s.row_strategy.assign(rows, 0.0);
    s.col_strategy.assign(cols, 0.0);
    for (std::size_t r = 0; r < nr; ++r) s.row_strategy[keep_rows[r]] = p_small[r];
    for (std::size_t c = 0; c < nc; ++c) s.col_strategy[keep_cols[c]] = q_small[c];
    normalize(s.row_strategy);
    normalize(s.col_strategy);
    certify(game, s);
    best_gap = std::min(best_gap, s.gap);
    if (s.gap <= options.dense_tol) break;
  }
  s.iterations = pivots;
  if (!(s.gap <= options.dense_tol)) {
    throw SolverError("dense solve finished with duality gap " + std::to_string(best_gap) +
                          " above tol " + std::to_string(options.dense_tol),
                      best_gap);
  }
  return s;
}

ZeroSumSolution solve_iterative(const MatrixGame& game, const SolverOptions& options) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  if (rows == 0 || cols == 0) throw ShapeError("matrix game needs at least one row and column");

  std::vector<double> p_seed, q_seed;
  mwu_seed(game, options.mwu_seed_iterations, p_seed, q_seed);
  constexpr std::size_t kSeedSupport = 16;
  std::vector<std::size_t> row_set = top_indices(p_seed, kSeedSupport);
  std::vector<std::size_t> col_set = top_indices(q_seed, kSeedSupport);
  std::vector<char> in_rows(rows, 0), in_cols(cols, 0);
  for (std::size_t r : row_set) in_rows[r] = 1;
  for (std::size_t c : col_set) in_cols[c] = 1;

  SolverOptions sub_options = options;
  sub_options.dense_tol = std::min(1e-9, options.iterative_tol * 1e-3);

  ZeroSumSolution best;
  best.gap = std::numeric_limits<double>::infinity();
  std::vector<double> aq(rows), pa(cols);
  constexpr std::size_t kBatch = 8;
  for (std::size_t round = 0; round < options.max_oracle_rounds; ++round) {
    SubGame sub(game, row_set, col_set);
    ZeroSumSolution local = solve_dense(sub, sub_options);

    ZeroSumSolution s;
    s.method = "iterative";
    s.tol = options.iterative_tol;
    s.iterations = round + 1;
    s.row_strategy.assign(rows, 0.0);
    s.col_strategy.assign(cols, 0.0);
    for (std::size_t i = 0; i < row_set.size(); ++i) s.row_strategy[row_set[i]] = local.row_strategy[i];
    for (std::size_t i = 0; i < col_set.size(); ++i) s.col_strategy[col_set[i]] = local.col_strategy[i];
    certify(game, s);
    if (s.gap < best.gap) best = s;
    if (s.gap <= options.iterative_tol) return s;

    // Grow both supports with the most profitable deviations outside them.
    game.row_values(s.col_strategy, aq);
    game.col_values(s.row_strategy, pa);
    std::size_t added = 0;
    std::vector<double> row_gain(rows), col_gain(cols);
    for (std::size_t r = 0; r < rows; ++r) row_gain[r] = in_rows[r] ? -1.0 : aq[r] - s.value;
    for (std::size_t c = 0; c < cols; ++c) col_gain[c] = in_cols[c] ? -1.0 : s.value - pa[c];
    for (std::size_t r : top_indices(row_gain, kBatch)) {
      if (row_gain[r] > 0.0) {
        in_rows[r] = 1;
        row_set.push_back(r);
        ++added;
      }
    }
    for (std::size_t c : top_indices(col_gain, kBatch)) {
      if (col_gain[c] > 0.0) {
        in_cols[c] = 1;
        col_set.push_back(c);
        ++added;
      }
    }
    if (added == 0) {
      throw SolverError("iterative solve stalled with gap " + std::to_string(best.gap), best.gap);
    }
  }
  throw SolverError("iterative solve exhausted " + std::to_string(options.max_oracle_rounds) +
                        " rounds; best gap " + std::to_string(best.gap),
                    best.gap);
}

ZeroSumSolution solve_zero_sum(const MatrixGame& game, const SolverOptions& options) {
  switch (options.method) {
    case Method::kDense:
      return solve_dense(game, options);
    case Method::kIterative:
      return solve_iterative(game, options);
    case Method::kAuto:
      break;
  }
  if (game.rows() * game.cols() > options.dense_cell_limit) return solve_iterative(game, options);
  return solve_dense(game, options);
}

}  // namespace softfusion::lp
