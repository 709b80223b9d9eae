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

#ifndef SOFTFUSION_ERRORS_HPP_
#define SOFTFUSION_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softfusion {

// Invalid argument to a numerical routine (negative shape, p outside (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Strategy or table dimensions disagree with the grid they index.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The rate equation has no root in the search bracket.
class InfeasibleRateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dense payoff table would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t required_bytes,
                std::size_t budget_bytes)
      : std::runtime_error(what),
        required_bytes_(required_bytes),
        budget_bytes_(budget_bytes) {}
  std::size_t required_bytes() const { return required_bytes_; }
  std::size_t budget_bytes() const { return budget_bytes_; }

 private:
  std::size_t required_bytes_;
  std::size_t budget_bytes_;
};

// The equilibrium solver ran out of iterations or pivots.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_gap)
      : std::runtime_error(what), best_gap_(best_gap) {}
  double best_gap() const { return best_gap_; }

 private:
  double best_gap_;
};

// Power caps are too small for the requested number of disjoint intervals.
class InfeasiblePlanError : public std::runtime_error {
 public:
  InfeasiblePlanError(const std::string& what, std::size_t largest_m)
      : std::runtime_error(what), largest_m_(largest_m) {}
  std::size_t largest_achievable_m() const { return largest_m_; }

 private:
  std::size_t largest_m_;
};

}  // namespace softfusion

#endif  // SOFTFUSION_ERRORS_HPP_
