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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace softfusion::cli {

using Json = nlohmann::ordered_json;

namespace {

Json grid_json(double lo, double hi, double spacing) {
  return Json{{"min", lo}, {"max", hi}, {"spacing", spacing}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
  return out;
}

std::size_t line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line of the last component of `path`, found by locating each quoted key
// in turn. 0 when absent.
std::size_t line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& key : path) {
    const std::string quoted = "\"" + key + "\"";
    for (;;) {
      pos = text.find(quoted, pos);
      if (pos == std::string::npos) return 0;
      std::size_t after = pos + quoted.size();
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after < text.size() && text[after] == ':') break;
      pos = after;
    }
    pos += quoted.size();
  }
  return line_at(text, pos);
}

[[noreturn]] void fail_at(const std::string& text, const std::string& source,
                          const std::vector<std::string>& path, const std::string& msg) {
  const std::size_t line = text.empty() ? 0 : line_of(text, path);
  std::ostringstream os;
  if (line > 0) {
    os << source << ":" << line << ": " << join(path) << ": " << msg;
  } else {
    os << join(path) << ": " << msg;
  }
  throw ConfigError(os.str());
}

bool compatible(const Json& def, const Json& val) {
  if (def.is_null()) return val.is_null() || val.is_number();
  if (def.is_number()) return val.is_number();
  if (def.is_array()) return val.is_array();
  if (def.is_string()) return val.is_string();
  if (def.is_boolean()) return val.is_boolean();
  if (def.is_object()) return val.is_object();
  return false;
}

const char* kind(const Json& def) {
  if (def.is_null()) return "a number or null";
  if (def.is_number()) return "a number";
  if (def.is_array()) return "an array";
  if (def.is_string()) return "a string";
  if (def.is_boolean()) return "a boolean";
  return "an object";
}

void merge(Json& base, const Json& user, std::vector<std::string>& path, const std::string& text,
           const std::string& source) {
  for (auto it = user.begin(); it != user.end(); ++it) {
    path.push_back(it.key());
    if (!base.contains(it.key())) fail_at(text, source, path, "unknown key");
    Json& slot = base[it.key()];
    if (!compatible(slot, it.value())) {
      fail_at(text, source, path, std::string("expected ") + kind(slot));
    }
    if (slot.is_object()) {
      merge(slot, it.value(), path, text, source);
    } else {
      slot = it.value();
    }
    path.pop_back();
  }
}

struct Reader {
  const Json& root;
  const std::string& text;
  const std::string& source;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    fail_at(text, source, split_path(path), msg);
  }

  const Json& at(const std::string& path) const {
    const Json* node = &root;
    for (const auto& p : split_path(path)) node = &node->at(p);
    return *node;
  }

  double number(const std::string& path) const {
    const Json& v = at(path);
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  double positive(const std::string& path) const {
    const double d = number(path);
    if (!(d > 0.0)) fail(path, "must be positive");
    return d;
  }

  long long integer(const std::string& path, long long lo) const {
    const Json& v = at(path);
    if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == std::floor(v.get<double>()))) {
      fail(path, "expected an integer");
    }
    const auto i = v.get<long long>();
    if (i < lo) fail(path, "must be at least " + std::to_string(lo));
    return i;
  }

  std::vector<double> numbers(const std::string& path, bool positive_only) const {
    const Json& v = at(path);
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
    std::vector<double> out;
    for (const Json& e : v) {
      if (!e.is_number()) fail(path, "expected a nonempty array of numbers");
      const double d = e.get<double>();
      if (!std::isfinite(d) || d < 0.0 || (positive_only && d == 0.0)) {
        fail(path, positive_only ? "entries must be positive" : "entries must be non-negative");
      }
      out.push_back(d);
    }
    return out;
  }

  std::vector<int> counts(const std::string& path) const {
    const Json& v = at(path);
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of integers");
    std::vector<int> out;
    for (const Json& e : v) {
      if (!e.is_number_integer() || e.get<long long>() < 1 || e.get<long long>() > 1'000'000) {
        fail(path, "entries must be positive integers");
      }
      out.push_back(e.get<int>());
    }
    if (!std::is_sorted(out.begin(), out.end()) ||
        std::adjacent_find(out.begin(), out.end()) != out.end()) {
      fail(path, "entries must be strictly increasing");
    }
    return out;
  }

  LinearGrid grid(const std::string& path) const {
    LinearGrid g{number(path + ".min"), number(path + ".max"), positive(path + ".spacing")};
    if (g.min < 0.0) fail(path + ".min", "must be non-negative");
    if (g.max < g.min) fail(path + ".max", "must not be below min");
    return g;
  }
};

}  // namespace

Json default_config_json() {
  Json cfg;
  cfg["params"] = {{"n", 200},        {"sigma_b2", 1.0}, {"sigma_w2", 1.0}, {"rate", 0.4},
                   {"upsilon", 0.1},  {"alpha", 0.1},    {"beta", 1.0},     {"tau", nullptr}};
  cfg["grids"] = {{"alice", grid_json(0.01, 3.0, 0.05)},
                  {"jammer", grid_json(0.01, 3.0, 0.05)},
                  {"threshold", grid_json(0.01, 6.0, 0.05)}};
  cfg["w_set"] = {1, 4, 16, 64};
  cfg["beta_list"] = {0.1, 0.25, 0.5, 0.75, 1, 1.5, 2, 4, 8, 16, 32, 64, 128};
  cfg["alpha_list"] = {1e-1, 1e-2, 1e-5, 1e-10};
  cfg["threshold_sweep"] = {{"p_a", 2.0}, {"p_j", 2.0}, {"grid", grid_json(0.01, 6.0, 0.01)}};
  cfg["geometric"] = {{"p_list", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}},
                      {"support", {1, 4, 16, 64}}};
  cfg["robustness"] = {{"epsilon", 0.02},      {"m", 10},           {"w_min", 1},
                       {"outage_target", 0.5}, {"cap_alice", 1e8},  {"cap_jammer", 1e8},
                       {"strategies", 100},    {"probes", 50},      {"seed", 9}};
  cfg["mc"] = {{"detection_trials", 100000},
               {"outage_trials", 1000000},
               {"configs", 20},
               {"seed", 800},
               {"w_set", {1, 4}}};
  cfg["output_dir"] = "";
  return cfg;
}

Json merge_config_text(const std::string& text, const std::string& source) {
  Json user;
  try {
    user = Json::parse(text, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << line_at(text, e.byte == 0 ? 0 : e.byte - 1) << ": invalid JSON: "
       << e.what();
    throw ConfigError(os.str());
  }
  if (!user.is_object()) throw ConfigError(source + ":1: top level must be an object");
  Json cfg = default_config_json();
  std::vector<std::string> path;
  merge(cfg, user, path, text, source);
  return cfg;
}

void apply_override(Json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set " + assignment + ": expected dotted.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const Json::parse_error&) {
    value = raw;
  }
  Json* node = &cfg;
  for (const auto& key : split_path(path)) {
    if (!node->is_object() || !node->contains(key)) {
      throw ConfigError("--set " + path + ": unknown key");
    }
    node = &(*node)[key];
  }
  if (!compatible(*node, value)) {
    throw ConfigError("--set " + path + ": expected " + kind(*node));
  }
  *node = value;
}

ExperimentConfig to_config(const Json& cfg, const std::string& text, const std::string& source) {
  const Reader r{cfg, text, source};
  ExperimentConfig c;
  c.params.n = static_cast<int>(r.integer("params.n", 1));
  c.params.sigma_b2 = r.positive("params.sigma_b2");
  c.params.sigma_w2 = r.positive("params.sigma_w2");
  c.params.rate = r.positive("params.rate");
  c.params.upsilon = r.number("params.upsilon");
  if (!(c.params.upsilon > 0.0 && c.params.upsilon < 1.0)) r.fail("params.upsilon", "must lie in (0, 1)");
  c.params.alpha = r.number("params.alpha");
  if (c.params.alpha < 0.0) r.fail("params.alpha", "must be non-negative");
  c.params.beta = r.number("params.beta");
  if (c.params.beta < 0.0) r.fail("params.beta", "must be non-negative");
  if (!cfg["params"]["tau"].is_null()) c.tau = r.positive("params.tau");

  c.alice = r.grid("grids.alice");
  if (c.alice.min <= 0.0) r.fail("grids.alice.min", "must be positive");
  c.jammer = r.grid("grids.jammer");
  c.thresholds = r.grid("grids.threshold");
  if (c.thresholds.min <= 0.0) r.fail("grids.threshold.min", "must be positive");

  c.w_set = r.counts("w_set");
  c.beta_list = r.numbers("beta_list", false);
  c.alpha_list = r.numbers("alpha_list", false);

  c.threshold_sweep.p_a = r.positive("threshold_sweep.p_a");
  c.threshold_sweep.p_j = r.number("threshold_sweep.p_j");
  if (c.threshold_sweep.p_j < 0.0) r.fail("threshold_sweep.p_j", "must be non-negative");
  c.threshold_sweep.thresholds = r.grid("threshold_sweep.grid");
  if (c.threshold_sweep.thresholds.min <= 0.0) r.fail("threshold_sweep.grid.min", "must be positive");

  c.geometric.p_list = r.numbers("geometric.p_list", true);
  for (double p : c.geometric.p_list) {
    if (p >= 1.0) r.fail("geometric.p_list", "entries must lie in (0, 1)");
  }
  c.geometric.support = r.counts("geometric.support");

  c.robustness.epsilon = r.number("robustness.epsilon");
  if (!(c.robustness.epsilon > 0.0 && c.robustness.epsilon < 1.0)) {
    r.fail("robustness.epsilon", "must lie in (0, 1)");
  }
  c.robustness.m = static_cast<std::size_t>(r.integer("robustness.m", 1));
  c.robustness.w_min = static_cast<int>(r.integer("robustness.w_min", 1));
  c.robustness.outage_target = r.number("robustness.outage_target");
  if (!(c.robustness.outage_target > 0.0 && c.robustness.outage_target < 1.0)) {
    r.fail("robustness.outage_target", "must lie in (0, 1)");
  }
  c.robustness.cap_alice = r.positive("robustness.cap_alice");
  c.robustness.cap_jammer = r.positive("robustness.cap_jammer");
  c.robustness.strategies = static_cast<std::size_t>(r.integer("robustness.strategies", 0));
  c.robustness.probes = static_cast<std::size_t>(r.integer("robustness.probes", 1));
  c.robustness.seed = static_cast<std::uint64_t>(r.integer("robustness.seed", 0));

  c.mc.detection_trials = static_cast<std::uint64_t>(r.integer("mc.detection_trials", 1));
  c.mc.outage_trials = static_cast<std::uint64_t>(r.integer("mc.outage_trials", 1));
  c.mc.configs = static_cast<std::size_t>(r.integer("mc.configs", 1));
  c.mc.seed = static_cast<std::uint64_t>(r.integer("mc.seed", 0));
  c.mc.w_set = r.counts("mc.w_set");

  c.output_dir = cfg["output_dir"].get<std::string>();
  return c;
}

}  // namespace softfusion::cli
