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

// Mixed strategies of the two players.
//
// Both are dense row-major probability tables: Alice-Jammer over the
// (alice level, jammer level) grid, FC over (Warden count, threshold).

#ifndef SOFTFUSION_STRATEGY_HPP_
#define SOFTFUSION_STRATEGY_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace softfusion {

inline constexpr double kSimplexTolerance = 1e-9;

// A probability table of shape (outer, inner), row-major.
class ProbabilityTable {
 public:
  ProbabilityTable() = default;
  ProbabilityTable(std::size_t outer, std::size_t inner, std::vector<double> probs);

  static ProbabilityTable point_mass(std::size_t outer, std::size_t inner, std::size_t o,
                                     std::size_t i);
  static ProbabilityTable uniform(std::size_t outer, std::size_t inner);

  std::size_t outer() const { return outer_; }
  std::size_t inner() const { return inner_; }
  std::size_t size() const { return probs_.size(); }
  double operator()(std::size_t o, std::size_t i) const { return probs_[o * inner_ + i]; }
  std::span<const double> flat() const { return probs_; }

  // Sums over the inner (resp. outer) index.
  std::vector<double> outer_marginal() const;
  std::vector<double> inner_marginal() const;

  // Non-negative entries summing to one within `tol`.
  bool is_distribution(double tol = kSimplexTolerance) const;

 private:
  std::size_t outer_ = 0;
  std::size_t inner_ = 0;
  std::vector<double> probs_;
};

// pi^{A,J}: outer index is the Alice level i, inner the Jammer level j.
class AliceJammerStrategy : public ProbabilityTable {
 public:
  using ProbabilityTable::ProbabilityTable;
  AliceJammerStrategy(ProbabilityTable t) : ProbabilityTable(std::move(t)) {}
  std::size_t alice_count() const { return outer(); }
  std::size_t jammer_count() const { return inner(); }
};

// pi^{FC}: outer index is the Warden-count slot, inner the threshold slot.
class FcStrategy : public ProbabilityTable {
 public:
  using ProbabilityTable::ProbabilityTable;
  FcStrategy(ProbabilityTable t) : ProbabilityTable(std::move(t)) {}
  std::size_t w_count() const { return outer(); }
  std::size_t threshold_count() const { return inner(); }
};

}  // namespace softfusion

#endif  // SOFTFUSION_STRATEGY_HPP_
