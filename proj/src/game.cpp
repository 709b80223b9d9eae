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

#include "softfusion/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "softfusion/errors.hpp"
#include "softfusion/kernels.hpp"
#include "softfusion/specfun.hpp"

namespace softfusion {
namespace {

// Relative width within which two mu1 values share one P_MD row.
constexpr double kMeanClassTolerance = 1e-13;

std::vector<double> column_vector(const PayoffDecomposition& payoff, const FcStrategy& fc) {
  const FcActionSpace& space = payoff.space();
  if (fc.w_count() != space.w_count() || fc.threshold_count() != space.threshold_count()) {
    throw ShapeError("FC strategy shape does not match the action space");
  }
  if (payoff.restricted()) return fc.inner_marginal();
  return {fc.flat().begin(), fc.flat().end()};
}

FcStrategy lift_columns(const PayoffDecomposition& payoff, std::span<const double> q) {
  const FcActionSpace& space = payoff.space();
  if (!payoff.restricted()) {
    return FcStrategy(space.w_count(), space.threshold_count(), {q.begin(), q.end()});
  }
  std::vector<double> probs(space.size());
  for (std::size_t w = 0; w < space.w_count(); ++w) {
    for (std::size_t m = 0; m < space.threshold_count(); ++m) {
      probs[w * space.threshold_count() + m] = payoff.w_weights()[w] * q[m];
    }
  }
  return FcStrategy(space.w_count(), space.threshold_count(), std::move(probs));
}

void check_aj(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj) {
  if (aj.alice_count() != payoff.grid().alice_count() ||
      aj.jammer_count() != payoff.grid().jammer_count()) {
    throw ShapeError("Alice-Jammer strategy shape does not match the power grid");
  }
}

}  // namespace

std::size_t PayoffDecomposition::stored_bytes() const {
  return sizeof(double) * (reliability_.size() + pfa_.size() + pmd_.size() + cost_.size()) +
         sizeof(std::size_t) * mean_class_.size();
}

PayoffDecomposition build_payoff(const PowerGrid& grid, const FcActionSpace& space,
                                 const SystemParams& params, double tau,
                                 std::size_t memory_budget) {
  params.validate();
  const std::size_t pairs = grid.pair_count();
  const std::size_t actions = space.size();
  const std::size_t jammers = grid.jammer_count();
  const std::size_t worst_classes = pairs;

  // Class count is only known after grouping; budget the worst case first
  // with the real count checked below.
  const std::size_t planned =
      sizeof(double) * (pairs + jammers * actions + actions) + sizeof(std::size_t) * pairs;
  if (planned > memory_budget) {
    throw CapacityError("payoff tables need " + std::to_string(planned >> 20) +
                            " MiB, above the memory budget; use coarser grids",
                        planned, memory_budget);
  }

  PayoffDecomposition out(grid, space);
  out.alpha_ = params.alpha;
  out.beta_ = params.beta;
  out.tau_ = tau;
  out.jammer_count_ = jammers;

  out.reliability_.resize(pairs);
  for (std::size_t i = 0; i < grid.alice_count(); ++i) {
    for (std::size_t j = 0; j < jammers; ++j) {
      out.reliability_[i * jammers + j] = 1.0 - outage_pure(grid.pair(i, j), tau, params.sigma_b2);
    }
  }

  out.cost_.resize(actions);
  for (std::size_t k = 0; k < actions; ++k) out.cost_[k] = static_cast<double>(space.action(k).w);

  out.pfa_.resize(jammers * actions);
  for (std::size_t j = 0; j < jammers; ++j) {
    for (std::size_t k = 0; k < actions; ++k) {
      const FcAction a = space.action(k);
      out.pfa_[j * actions + k] =
          pfa_pure(grid.jammer_levels()[j], a.w, a.t, params.n, params.sigma_w2);
    }
  }

  // Group pairs by mu1.
  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto mu1_of = [&](std::size_t pair) {
    return params.sigma_w2 + grid.jammer_levels()[pair % jammers] +
           grid.alice_levels()[pair / jammers];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mu1_of(a) < mu1_of(b); });
  out.mean_class_.resize(pairs);
  std::vector<double> class_mu1;
  class_mu1.reserve(std::min(worst_classes, grid.alice_count() + jammers));
  for (std::size_t pair : order) {
    const double mu1 = mu1_of(pair);
    if (class_mu1.empty() || mu1 > class_mu1.back() * (1.0 + kMeanClassTolerance)) {
      class_mu1.push_back(mu1);
    }
    out.mean_class_[pair] = class_mu1.size() - 1;
  }
  const std::size_t total = planned + sizeof(double) * class_mu1.size() * actions;
  if (total > memory_budget) {
    throw CapacityError("payoff tables need " + std::to_string(total >> 20) +
                            " MiB, above the memory budget; use coarser grids",
                        total, memory_budget);
  }
  out.pmd_.resize(class_mu1.size() * actions);
  for (std::size_t u = 0; u < class_mu1.size(); ++u) {
    for (std::size_t k = 0; k < actions; ++k) {
      const FcAction a = space.action(k);
      const double shape = static_cast<double>(a.w) * params.n;
      out.pmd_[u * actions + k] = specfun::reg_lower_gamma(shape, shape * a.t / class_mu1[u]);
    }
  }
  return out;
}

PayoffDecomposition restrict_payoff(const PayoffDecomposition& full,
                                    std::span<const double> w_weights) {
  if (full.restricted()) throw ShapeError("payoff is already restricted");
  const FcActionSpace& space = full.space();
  if (w_weights.size() != space.w_count()) {
    throw ShapeError("W marginal has " + std::to_string(w_weights.size()) + " entries, expected " +
                     std::to_string(space.w_count()));
  }
  double total = 0.0;
  for (double w : w_weights) {
    if (!(w >= 0.0)) throw DomainError("W marginal must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) throw DomainError("W marginal must sum to one");

  const std::size_t m_count = space.threshold_count();
  const std::size_t k_full = space.size();
  PayoffDecomposition out(full.grid_, full.space_);
  out.w_weights_.assign(w_weights.begin(), w_weights.end());
  out.alpha_ = full.alpha_;
  out.beta_ = full.beta_;
  out.tau_ = full.tau_;
  out.jammer_count_ = full.jammer_count_;
  out.reliability_ = full.reliability_;
  out.mean_class_ = full.mean_class_;

  auto average = [&](const std::vector<double>& table) {
    const std::size_t rows = table.size() / k_full;
    std::vector<double> r(rows * m_count, 0.0);
    for (std::size_t row = 0; row < rows; ++row) {
      for (std::size_t w = 0; w < space.w_count(); ++w) {
        const double g = w_weights[w];
        if (g == 0.0) continue;
        for (std::size_t m = 0; m < m_count; ++m) {
          r[row * m_count + m] += g * table[row * k_full + w * m_count + m];
        }
      }
    }
    return r;
  };
  out.pfa_ = average(full.pfa_);
  out.pmd_ = average(full.pmd_);
  double mean_w = 0.0;
  for (std::size_t w = 0; w < space.w_count(); ++w) mean_w += w_weights[w] * space.w_set()[w];
  out.cost_.assign(m_count, mean_w);
  return out;
}

void PayoffGame::row_values(std::span<const double> q, std::span<double> out) const {
  const auto& kern = kernels::active_kernels();
  const std::size_t k = p_.action_count();
  const std::size_t jammers = p_.jammer_count_;
  const std::size_t classes = p_.mean_class_count();
  std::vector<double> pfa_q(jammers), pmd_q(classes);
  kern.gemv(p_.pfa_.data(), jammers, k, k, q.data(), pfa_q.data());
  kern.gemv(p_.pmd_.data(), classes, k, k, q.data(), pmd_q.data());
  const double cost_q = kern.dot(p_.cost_.data(), q.data(), k);
  const double mass = std::accumulate(q.begin(), q.end(), 0.0);
  for (std::size_t pair = 0; pair < p_.pair_count(); ++pair) {
    out[pair] = p_.reliability_[pair] * mass +
                p_.beta_ * (pfa_q[pair % jammers] + pmd_q[p_.mean_class_[pair]]) +
                p_.alpha_ * cost_q;
  }
}

void PayoffGame::col_values(std::span<const double> p, std::span<double> out) const {
  const auto& kern = kernels::active_kernels();
  const std::size_t k = p_.action_count();
  const std::size_t jammers = p_.jammer_count_;
  const std::size_t classes = p_.mean_class_count();
  std::vector<double> by_jammer(jammers, 0.0), by_class(classes, 0.0);
  double mass = 0.0;
  double rel = 0.0;
  for (std::size_t pair = 0; pair < p_.pair_count(); ++pair) {
    const double w = p[pair];
    if (w == 0.0) continue;
    mass += w;
    rel += w * p_.reliability_[pair];
    by_jammer[pair % jammers] += w;
    by_class[p_.mean_class_[pair]] += w;
  }
  std::vector<double> fa(k), md(k);
  kern.gemv_t(p_.pfa_.data(), jammers, k, k, by_jammer.data(), fa.data());
  kern.gemv_t(p_.pmd_.data(), classes, k, k, by_class.data(), md.data());
  for (std::size_t c = 0; c < k; ++c) {
    out[c] = rel + p_.beta_ * (fa[c] + md[c]) + p_.alpha_ * p_.cost_[c] * mass;
  }
}

GameMetrics evaluate_metrics(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj,
                             const FcStrategy& fc) {
  check_aj(payoff, aj);
  const std::vector<double> q = column_vector(payoff, fc);
  GameMetrics m;
  for (std::size_t pair = 0; pair < payoff.pair_count(); ++pair) {
    const double w = aj.flat()[pair];
    if (w == 0.0) continue;
    double fa = 0.0;
    double md = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (q[k] == 0.0) continue;
      fa += q[k] * payoff.pfa(pair, k);
      md += q[k] * payoff.pmd(pair, k);
    }
    m.pfa += w * fa;
    m.pmd += w * md;
    m.one_minus_pout += w * payoff.reliability(pair);
  }
  m.err_sum = m.pfa + m.pmd;
  m.pout = 1.0 - m.one_minus_pout;
  m.expected_w = expected_wardens(fc, payoff.space());
  return m;
}

double expected_utility(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj,
                        const FcStrategy& fc) {
  check_aj(payoff, aj);
  const std::vector<double> q = column_vector(payoff, fc);
  std::vector<double> aq(payoff.pair_count());
  PayoffGame(payoff).row_values(q, aq);
  double v = 0.0;
  for (std::size_t pair = 0; pair < aq.size(); ++pair) v += aj.flat()[pair] * aq[pair];
  return v;
}

GameSolution solve_equilibrium(const PayoffDecomposition& payoff, const lp::SolverOptions& options) {
  const PayoffGame game(payoff);
  const lp::ZeroSumSolution s = lp::solve_zero_sum(game, options);
  GameSolution out;
  out.value = s.value;
  out.aj = AliceJammerStrategy(payoff.grid().alice_count(), payoff.grid().jammer_count(),
                               s.row_strategy);
  out.fc = lift_columns(payoff, s.col_strategy);
  out.gap = s.gap;
  out.upper = s.upper;
  out.lower = s.lower;
  out.tol = s.tol;
  out.method = s.method;
  out.iterations = s.iterations;
  out.metrics = evaluate_metrics(payoff, out.aj, out.fc);
  return out;
}

double expected_wardens(const FcStrategy& fc, const FcActionSpace& space) {
  if (fc.w_count() != space.w_count() || fc.threshold_count() != space.threshold_count()) {
    throw ShapeError("FC strategy shape does not match the action space");
  }
  const std::vector<double> w_marginal = fc.outer_marginal();
  double e = 0.0;
  for (std::size_t w = 0; w < w_marginal.size(); ++w) e += space.w_set()[w] * w_marginal[w];
  return e;
}

double best_response_value(const PayoffDecomposition& payoff, const FcStrategy& fc) {
  return lp::best_response_value(PayoffGame(payoff), column_vector(payoff, fc), lp::Side::kRow);
}

double best_response_value(const PayoffDecomposition& payoff, const AliceJammerStrategy& aj) {
  check_aj(payoff, aj);
  return lp::best_response_value(PayoffGame(payoff), aj.flat(), lp::Side::kColumn);
}

std::pair<std::vector<double>, std::vector<double>> marginals(const FcStrategy& fc) {
  return {fc.outer_marginal(), fc.inner_marginal()};
}

}  // namespace softfusion
