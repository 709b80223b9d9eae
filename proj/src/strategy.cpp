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

#include "softfusion/strategy.hpp"

#include <cmath>
#include <string>

#include "softfusion/errors.hpp"

namespace softfusion {

ProbabilityTable::ProbabilityTable(std::size_t outer, std::size_t inner, std::vector<double> probs)
    : outer_(outer), inner_(inner), probs_(std::move(probs)) {
  if (outer_ == 0 || inner_ == 0) throw ShapeError("probability table must be non-empty");
  if (probs_.size() != outer_ * inner_) {
    throw ShapeError("probability table has " + std::to_string(probs_.size()) +
                     " entries, expected " + std::to_string(outer_ * inner_));
  }
}

ProbabilityTable ProbabilityTable::point_mass(std::size_t outer, std::size_t inner,
                                              std::size_t o, std::size_t i) {
  if (o >= outer || i >= inner) throw ShapeError("point mass index out of range");
  std::vector<double> probs(outer * inner, 0.0);
  probs[o * inner + i] = 1.0;
  return {outer, inner, std::move(probs)};
}

ProbabilityTable ProbabilityTable::uniform(std::size_t outer, std::size_t inner) {
  const double w = 1.0 / static_cast<double>(outer * inner);
  return {outer, inner, std::vector<double>(outer * inner, w)};
}

std::vector<double> ProbabilityTable::outer_marginal() const {
  std::vector<double> m(outer_, 0.0);
  for (std::size_t o = 0; o < outer_; ++o) {
    for (std::size_t i = 0; i < inner_; ++i) m[o] += probs_[o * inner_ + i];
  }
  return m;
}

std::vector<double> ProbabilityTable::inner_marginal() const {
  std::vector<double> m(inner_, 0.0);
  for (std::size_t o = 0; o < outer_; ++o) {
    for (std::size_t i = 0; i < inner_; ++i) m[i] += probs_[o * inner_ + i];
  }
  return m;
}

bool ProbabilityTable::is_distribution(double tol) const {
  if (probs_.empty()) return false;
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

}  // namespace softfusion
