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

// Special functions behind every detection and outage probability.
//
// The incomplete Gamma routines work in log space throughout so that shapes
// of order 10^4 (W*N with W = 64, N = 200) neither overflow nor lose the
// tail mass to cancellation.

#ifndef SOFTFUSION_SPECFUN_HPP_
#define SOFTFUSION_SPECFUN_HPP_

namespace softfusion::specfun {

// ln Gamma(a) for a > 0.
double ln_gamma(double a);

// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2], the Stirling remainder.
// Accurate for large a where ln_gamma itself would lose digits to the
// subtraction.
double stirling_remainder(double a);

// Regularized upper incomplete Gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double reg_upper_gamma(double a, double x);

// Regularized lower incomplete Gamma P(a, x) = 1 - Q(a, x).
double reg_lower_gamma(double a, double x);

// ln Q(a, x) and ln P(a, x); finite even when the value underflows a double.
// Return -infinity only for exact zeros (P at x = 0).
double log_reg_upper_gamma(double a, double x);
double log_reg_lower_gamma(double a, double x);

// Log density of Gamma(shape = a, rate = 1) at x > 0:
// (a - 1) ln x - x - ln Gamma(a).
double log_gamma_density(double a, double x);

// Standard normal tail Q(z) = P(Z > z).
double normal_tail(double z);

// Inverse of normal_tail on (0, 1).
double inv_qfunc(double p);

}  // namespace softfusion::specfun

#endif  // SOFTFUSION_SPECFUN_HPP_
