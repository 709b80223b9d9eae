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

// softfusion: experiment runner.
//
//   softfusion <subcommand> [--config FILE] [--set a.b=v]... [--out DIR]
//
// Exit status: 0 success, 2 configuration error, 3 solver error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "softfusion/errors.hpp"

#ifndef SOFTFUSION_VERSION
#define SOFTFUSION_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace softfusion;
using namespace softfusion::cli;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::optional<double> p;
  bool full_grids = false;
  std::string out_dir;
  std::string policy = "fixed";
};

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int run(const std::string& command, const Options& opt, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  std::string text;
  std::string source = "<defaults>";
  Json json;
  ExperimentConfig cfg;
  double tau = 0.0;
  fs::path out_dir;
  try {
    if (!opt.config_path.empty()) {
      std::ifstream in(opt.config_path);
      if (!in) throw ConfigError(opt.config_path + ": cannot read configuration file");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
      source = opt.config_path;
      json = merge_config_text(text, source);
    } else {
      json = default_config_json();
    }
    if (opt.full_grids) {
      std::cerr << "warning: --full-grids uses 0.01 spacing (300 x 300 power pairs, 600 "
                   "thresholds); the game exceeds dense limits, takes the iterative path and "
                   "may need several GB and hours\n";
      for (const char* g : {"alice", "jammer", "threshold"}) json["grids"][g]["spacing"] = 0.01;
    }
    for (const auto& s : opt.sets) apply_override(json, s);
    if (opt.beta) {
      apply_override(json, "params.beta=" + format_number(*opt.beta));
      apply_override(json, "beta_list=[" + format_number(*opt.beta) + "]");
    }
    if (opt.alpha) {
      apply_override(json, "params.alpha=" + format_number(*opt.alpha));
      apply_override(json, "alpha_list=[" + format_number(*opt.alpha) + "]");
    }
    if (opt.p) apply_override(json, "geometric.p_list=[" + format_number(*opt.p) + "]");
    cfg = to_config(json, text, source);
    cfg.params.validate();
    tau = cfg.tau > 0.0 ? cfg.tau : sinr_threshold(cfg.params);

    if (!opt.out_dir.empty()) {
      out_dir = opt.out_dir;
    } else if (const char* env = std::getenv("SOFTFUSION_OUT_DIR"); env && *env) {
      out_dir = env;
    } else if (!cfg.output_dir.empty()) {
      out_dir = cfg.output_dir;
    } else {
      out_dir = "softfusion_out";
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
      throw ConfigError(out_dir.string() + ": cannot create output directory");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  RunResult result;
  try {
    if (command == "threshold-sweep") {
      result = threshold_sweep(cfg, tau);
    } else if (command == "tradeoff") {
      const WPolicy policy = opt.policy == "geometric" ? WPolicy::kGeometric
                             : opt.policy == "both"    ? WPolicy::kBoth
                                                       : WPolicy::kFixed;
      result = tradeoff(cfg, tau, policy);
    } else if (command == "equilibrium") {
      result = equilibrium(cfg, tau);
    } else if (command == "ew-sweep") {
      result = ew_sweep(cfg, tau);
    } else if (command == "geometric") {
      result = geometric(cfg, tau);
    } else if (command == "robustness") {
      result = robustness(cfg, tau);
    } else {
      result = validate(cfg, tau);
    }
  } catch (const InfeasiblePlanError& e) {
    std::cerr << "solver error: " << e.what() << " (largest achievable m = "
              << e.largest_achievable_m() << ")\n";
    return kSolverError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const CapacityError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const CertificateError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  Json manifest;
  manifest["subcommand"] = command;
  manifest["version"] = SOFTFUSION_VERSION;
  manifest["argv"] = argv;
  manifest["started_utc"] = utc_now();
  manifest["tau"] = tau;
  manifest["config"] = json;
  manifest["files"] = Json::array();
  for (const auto& t : result.tables) {
    const fs::path path = out_dir / (t.name() + ".csv");
    std::ofstream f(path, std::ios::binary);
    f << t.render();
    if (!f) {
      std::cerr << "config error: " << path.string() << ": write failed\n";
      return kConfigError;
    }
    manifest["files"].push_back({{"name", path.filename().string()}, {"rows", t.size()}});
  }
  manifest["certificates"] = result.certificates;
  manifest["summary"] = result.summary;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream mf(out_dir / "manifest.json");
  mf << manifest.dump(2) << "\n";
  if (!mf) {
    std::cerr << "config error: manifest write failed\n";
    return kConfigError;
  }
  std::cout << command << ": wrote " << result.tables.size() << " table(s) to " << out_dir.string()
            << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softfusion: covert soft-fusion detection game experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SOFTFUSION_VERSION);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"threshold-sweep", "P_FA + P_MD over thresholds for one power pair"},
      {"tradeoff", "error sum versus reliability over beta, fixed or geometric W"},
      {"equilibrium", "equilibrium strategies and operating point"},
      {"ew-sweep", "expected Warden count over alpha and beta"},
      {"geometric", "geometric-W baseline over p and beta"},
      {"robustness", "disjoint-interval plan and covertness verification"},
      {"validate", "Monte Carlo versus analytic probabilities"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config_path, "JSON configuration file");
    sub->add_option("--set", opt.sets, "override, dotted.path=value (repeatable)");
    sub->add_option("--beta", opt.beta, "detection weight; replaces beta_list");
    sub->add_option("--alpha", opt.alpha, "deployment cost; replaces alpha_list");
    sub->add_option("--p", opt.p, "geometric shape; replaces geometric.p_list");
    sub->add_flag("--full-grids", opt.full_grids, "0.01 spacing on every grid");
    sub->add_option("--out", opt.out_dir, "output directory (default $SOFTFUSION_OUT_DIR)");
    if (std::string(name) == "tradeoff") {
      sub->add_option("--policy", opt.policy, "W policy")
          ->check(CLI::IsMember({"fixed", "geometric", "both"}));
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  const std::vector<std::string> args(argv, argv + argc);
  return run(app.get_subcommands().front()->get_name(), opt, args);
}
