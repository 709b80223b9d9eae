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

// Experiment configuration: JSON file merged over built-in defaults, then
// dotted-path overrides. Field reference: README.md.

#ifndef SOFTFUSION_TOOLS_CONFIG_HPP_
#define SOFTFUSION_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "softfusion/system.hpp"

namespace softfusion::cli {

// Message already carries "<source>:<line>: " when a line is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThresholdSweepConfig {
  double p_a = 2.0;
  double p_j = 2.0;
  LinearGrid thresholds{0.01, 6.0, 0.01};
};

struct GeometricConfig {
  std::vector<double> p_list;
  std::vector<int> support;
};

struct RobustnessConfig {
  double epsilon = 0.02;
  std::size_t m = 10;
  int w_min = 1;
  double outage_target = 0.5;
  double cap_alice = 1e8;
  double cap_jammer = 1e8;
  std::size_t strategies = 100;
  std::size_t probes = 50;
  std::uint64_t seed = 9;
};

struct McConfig {
  std::uint64_t detection_trials = 100'000;
  std::uint64_t outage_trials = 1'000'000;
  std::size_t configs = 20;
  std::uint64_t seed = 800;
  std::vector<int> w_set;
};

struct ExperimentConfig {
  SystemParams params;
  double tau = 0.0;  // <= 0: solved from (N, R_T, upsilon)
  LinearGrid alice{0.01, 3.0, 0.05};
  LinearGrid jammer{0.01, 3.0, 0.05};
  LinearGrid thresholds{0.01, 6.0, 0.05};
  std::vector<int> w_set;
  std::vector<double> beta_list;
  std::vector<double> alpha_list;
  ThresholdSweepConfig threshold_sweep;
  GeometricConfig geometric;
  RobustnessConfig robustness;
  McConfig mc;
  std::string output_dir;
};

nlohmann::ordered_json default_config_json();

// Parses `text` (named `source` in messages) and merges it over the
// defaults. Unknown keys and type mismatches are errors.
nlohmann::ordered_json merge_config_text(const std::string& text, const std::string& source);

// "a.b.c=value"; value is read as JSON when it parses, else as a string.
void apply_override(nlohmann::ordered_json& cfg, const std::string& assignment);

// Validates and converts. `text`/`source` locate offending keys.
ExperimentConfig to_config(const nlohmann::ordered_json& cfg, const std::string& text,
                           const std::string& source);

}  // namespace softfusion::cli

#endif  // SOFTFUSION_TOOLS_CONFIG_HPP_
