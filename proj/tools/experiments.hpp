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

#ifndef SOFTFUSION_TOOLS_EXPERIMENTS_HPP_
#define SOFTFUSION_TOOLS_EXPERIMENTS_HPP_

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace softfusion::cli {

// One CSV table held in memory until the run completes.
class Table {
 public:
  using Cell = std::variant<double, long long, std::string>;

  Table(std::string name, std::vector<std::string> header)
      : name_(std::move(name)), header_(std::move(header)) {}

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }
  const std::string& name() const { return name_; }
  std::size_t size() const { return rows_.size(); }
  // Numbers at 6 significant digits.
  std::string render() const;

 private:
  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

enum class WPolicy { kFixed, kGeometric, kBoth };

struct RunResult {
  std::vector<Table> tables;
  nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

RunResult threshold_sweep(const ExperimentConfig& cfg, double tau);
RunResult tradeoff(const ExperimentConfig& cfg, double tau, WPolicy policy);
RunResult equilibrium(const ExperimentConfig& cfg, double tau);
RunResult ew_sweep(const ExperimentConfig& cfg, double tau);
RunResult geometric(const ExperimentConfig& cfg, double tau);
RunResult robustness(const ExperimentConfig& cfg, double tau);
RunResult validate(const ExperimentConfig& cfg, double tau);

// Raised when a solved game misses its certificate.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace softfusion::cli

#endif  // SOFTFUSION_TOOLS_EXPERIMENTS_HPP_
