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

// Monte Carlo oracle for the analytical detection and outage probabilities.
//
// Trials are split into fixed-size chunks; chunk c draws from its own
// counter-based stream (seed, c), so results do not depend on how many
// worker threads run the chunks.

#ifndef SOFTFUSION_MONTECARLO_HPP_
#define SOFTFUSION_MONTECARLO_HPP_

#include <cstddef>
#include <cmath>
#include <cstdint>

#include "softfusion/detection.hpp"
#include "softfusion/system.hpp"

namespace softfusion::mc {

struct SimConfig {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0x5eedULL;
  unsigned workers = 0;  // 0: hardware concurrency
};

// SplitMix64 evaluated at counter positions of a stream key derived from
// (seed, stream). Stateless apart from the counter.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  // Uniform on (0, 1]; never returns 0, so -log(u) is finite.
  double next_open_unit();
  // Exponential with the given mean, by inverse CDF.
  double next_exponential(double mean) { return -mean * std::log(next_open_unit()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct Estimate {
  double p = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

struct DetectionEstimate {
  Estimate pfa;
  Estimate pmd;
};

// Per trial: W N exponential energies with mean mu0 (H0) and, independently,
// mu1 (H1); their averages are compared with t.
DetectionEstimate simulate_detection(const PowerPair& pair, const FcAction& action,
                                     const SystemParams& params, const SimConfig& cfg);

// Per trial: |h_ab|^2, |h_jb|^2 ~ Exp(1); outage when the SINR is below tau.
Estimate simulate_outage(const PowerPair& pair, double tau, double sigma_b2, const SimConfig& cfg);

}  // namespace softfusion::mc

#endif  // SOFTFUSION_MONTECARLO_HPP_
