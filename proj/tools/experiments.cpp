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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "softfusion/detection.hpp"
#include "softfusion/errors.hpp"
#include "softfusion/game.hpp"
#include "softfusion/geometric.hpp"
#include "softfusion/montecarlo.hpp"
#include "softfusion/robustness.hpp"

namespace softfusion::cli {

using Json = nlohmann::ordered_json;

std::string Table::render() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
  out += '\n';
  char buf[64];
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        std::snprintf(buf, sizeof buf, "%.6g", *d == 0.0 ? 0.0 : *d);
        out += buf;
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

PowerGrid power_grid(const ExperimentConfig& cfg) { return PowerGrid::from_grids(cfg.alice, cfg.jammer); }

SystemParams with(const ExperimentConfig& cfg, double alpha, double beta) {
  SystemParams p = cfg.params;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

std::string label(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

void certify(RunResult& out, const std::string& name, const GameSolution& s) {
  out.certificates.push_back({{"game", name},
                              {"method", s.method},
                              {"value", s.value},
                              {"upper", s.upper},
                              {"lower", s.lower},
                              {"gap", s.gap},
                              {"tol", s.tol},
                              {"iterations", s.iterations}});
  if (!(s.gap <= s.tol)) {
    std::ostringstream os;
    os << name << ": duality gap " << s.gap << " exceeds tol " << s.tol << " (upper " << s.upper
       << ", lower " << s.lower << ", method " << s.method << ")";
    throw CertificateError(os.str());
  }
}

long long as_int(std::size_t v) { return static_cast<long long>(v); }

}  // namespace

RunResult threshold_sweep(const ExperimentConfig& cfg, double /*tau*/) {
  RunResult out;
  const PowerPair pair{cfg.threshold_sweep.p_a, cfg.threshold_sweep.p_j};
  const auto ts = cfg.threshold_sweep.thresholds.levels();
  const int n = cfg.params.n;
  const double s2 = cfg.params.sigma_w2;
  Table sweep("threshold_sweep", {"W", "t", "pfa", "pmd", "err_sum", "log_err_sum"});
  Table argmin("threshold_argmin", {"W", "t_argmin", "err_sum", "t_star"});
  const double t_star = optimal_threshold(pair, s2);
  for (int w : cfg.w_set) {
    for (double t : ts) {
      const double pfa = pfa_pure(pair.p_j, w, t, n, s2);
      const double pmd = pmd_pure(pair.p_a, pair.p_j, w, t, n, s2);
      sweep.add({static_cast<long long>(w), t, pfa, pmd, pfa + pmd,
                 log_error_sum_pure(pair, {w, t}, n, s2)});
    }
    const auto best = argmin_threshold(pair, w, n, s2, ts);
    argmin.add({static_cast<long long>(w), best.t, std::exp(best.log_error_sum), t_star});
    out.summary["argmin_t"][std::to_string(w)] = best.t;
  }
  out.summary["t_star"] = t_star;
  out.tables.push_back(std::move(sweep));
  out.tables.push_back(std::move(argmin));
  return out;
}

RunResult tradeoff(const ExperimentConfig& cfg, double tau, WPolicy policy) {
  RunResult out;
  const auto grid = power_grid(cfg);
  const auto thresholds = cfg.thresholds.levels();
  Table t("tradeoff", {"beta", "W_policy", "p", "pfa", "pmd", "err_sum", "one_minus_pout", "gap"});
  const double alpha = cfg.params.alpha;
  if (policy != WPolicy::kGeometric) {
    for (int w : cfg.w_set) {
      const FcActionSpace space({w}, thresholds);
      for (double beta : cfg.beta_list) {
        const auto payoff = build_payoff(grid, space, with(cfg, alpha, beta), tau);
        const auto s = solve_equilibrium(payoff);
        certify(out, label("tradeoff W=%d beta=%g", w, beta), s);
        const auto& m = s.metrics;
        t.add({beta, "W=" + std::to_string(w), "", m.pfa, m.pmd, m.err_sum, m.one_minus_pout, s.gap});
      }
    }
  }
  if (policy != WPolicy::kFixed) {
    const FcActionSpace space(cfg.geometric.support, thresholds);
    for (double p : cfg.geometric.p_list) {
      for (double beta : cfg.beta_list) {
        const auto s = solve_restricted_equilibrium({p, cfg.geometric.support}, grid, space,
                                                    with(cfg, alpha, beta), tau);
        certify(out, label("tradeoff geometric p=%g beta=%g", p, beta), s);
        const auto& m = s.metrics;
        t.add({beta, "geometric", p, m.pfa, m.pmd, m.err_sum, m.one_minus_pout, s.gap});
      }
    }
  }
  out.tables.push_back(std::move(t));
  return out;
}

RunResult equilibrium(const ExperimentConfig& cfg, double tau) {
  RunResult out;
  const auto grid = power_grid(cfg);
  const FcActionSpace space(cfg.w_set, cfg.thresholds.levels());
  const auto payoff = build_payoff(grid, space, cfg.params, tau);
  const auto s = solve_equilibrium(payoff);
  certify(out, label("equilibrium alpha=%g beta=%g", cfg.params.alpha, cfg.params.beta), s);
  const auto& m = s.metrics;

  Table summary("equilibrium", {"alpha", "beta", "value", "expected_w", "pfa", "pmd", "err_sum",
                                "one_minus_pout", "gap", "method"});
  summary.add({cfg.params.alpha, cfg.params.beta, s.value, m.expected_w, m.pfa, m.pmd, m.err_sum,
               m.one_minus_pout, s.gap, s.method});

  const auto [w_marg, t_marg] = marginals(s.fc);
  Table wm("fc_w_marginal", {"W", "prob"});
  for (std::size_t i = 0; i < w_marg.size(); ++i) {
    wm.add({static_cast<long long>(cfg.w_set[i]), w_marg[i]});
    out.summary["w_marginal"][std::to_string(cfg.w_set[i])] = w_marg[i];
  }
  Table tm("fc_threshold_marginal", {"t", "prob"});
  for (std::size_t k = 0; k < t_marg.size(); ++k) tm.add({space.thresholds()[k], t_marg[k]});

  Table fc("fc_strategy", {"W", "t", "prob"});
  for (std::size_t k = 0; k < space.size(); ++k) {
    const double pk = s.fc.flat()[k];
    if (pk > 0.0) fc.add({static_cast<long long>(space.action(k).w), space.action(k).t, pk});
  }
  Table aj("aj_strategy", {"p_a", "p_j", "prob"});
  for (std::size_t i = 0; i < grid.alice_count(); ++i) {
    for (std::size_t j = 0; j < grid.jammer_count(); ++j) {
      const double pij = s.aj(i, j);
      if (pij > 0.0) aj.add({grid.alice_levels()[i], grid.jammer_levels()[j], pij});
    }
  }
  out.summary["value"] = s.value;
  out.summary["expected_w"] = m.expected_w;
  for (auto* tb : {&summary, &wm, &tm, &fc, &aj}) out.tables.push_back(std::move(*tb));
  return out;
}

RunResult ew_sweep(const ExperimentConfig& cfg, double tau) {
  RunResult out;
  const auto grid = power_grid(cfg);
  const FcActionSpace space(cfg.w_set, cfg.thresholds.levels());
  std::vector<std::string> header{"alpha", "beta", "expected_w", "value", "err_sum",
                                  "one_minus_pout", "gap"};
  for (int w : cfg.w_set) header.push_back("pr_W" + std::to_string(w));
  Table t("ew_sweep", header);
  for (double alpha : cfg.alpha_list) {
    for (double beta : cfg.beta_list) {
      const auto payoff = build_payoff(grid, space, with(cfg, alpha, beta), tau);
      const auto s = solve_equilibrium(payoff);
      certify(out, label("ew-sweep alpha=%g beta=%g", alpha, beta), s);
      const auto& m = s.metrics;
      std::vector<Table::Cell> row{alpha, beta, m.expected_w, s.value, m.err_sum, m.one_minus_pout, s.gap};
      for (double pw : marginals(s.fc).first) row.push_back(pw);
      t.add(std::move(row));
    }
  }
  out.tables.push_back(std::move(t));
  return out;
}

RunResult geometric(const ExperimentConfig& cfg, double tau) {
  RunResult out;
  const auto grid = power_grid(cfg);
  const FcActionSpace space(cfg.geometric.support, cfg.thresholds.levels());
  Table t("geometric", {"p", "beta", "pfa", "pmd", "err_sum", "one_minus_pout", "expected_w",
                        "value", "gap"});
  Table weights("geometric_weights", {"p", "W", "prob"});
  for (double p : cfg.geometric.p_list) {
    const GeometricDeployment dep{p, cfg.geometric.support};
    const auto w = geometric_weights(dep);
    for (std::size_t i = 0; i < w.size(); ++i) {
      weights.add({p, static_cast<long long>(dep.support[i]), w[i]});
    }
    for (double beta : cfg.beta_list) {
      const auto s = solve_restricted_equilibrium(dep, grid, space, with(cfg, cfg.params.alpha, beta), tau);
      certify(out, label("geometric p=%g beta=%g", p, beta), s);
      const auto& m = s.metrics;
      t.add({p, beta, m.pfa, m.pmd, m.err_sum, m.one_minus_pout, m.expected_w, s.value, s.gap});
    }
  }
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(weights));
  return out;
}

RunResult robustness(const ExperimentConfig& cfg, double tau) {
  RunResult out;
  const auto& rc = cfg.robustness;
  PlanRequest req;
  req.m = rc.m;
  req.epsilon = rc.epsilon;
  req.w_min = rc.w_min;
  req.n = cfg.params.n;
  req.tau = tau;
  req.sigma_b2 = cfg.params.sigma_b2;
  req.sigma_w2 = cfg.params.sigma_w2;
  req.outage_target = rc.outage_target;
  req.caps = {rc.cap_alice, rc.cap_jammer};
  const auto plan = construct_disjoint_pairs(req);
  const double s2 = cfg.params.sigma_w2;

  Table pt("robustness_plan", {"pair", "p_a", "p_j", "mu0", "mu1", "lo", "hi", "outage"});
  for (std::size_t i = 0; i < plan.m; ++i) {
    const auto mu = HypothesisMeans::of(plan.pairs[i], s2);
    pt.add({as_int(i), plan.pairs[i].p_a, plan.pairs[i].p_j, mu.mu0, mu.mu1, plan.intervals[i].lo,
            plan.intervals[i].hi, plan.outages[i]});
  }

  // FC strategies with W >= W_min and log-uniform thresholds spanning the plan.
  std::vector<int> ws;
  for (int w : cfg.w_set) {
    if (w >= rc.w_min) ws.push_back(w);
  }
  if (ws.empty()) ws.push_back(rc.w_min);
  std::mt19937_64 rng(rc.seed);
  std::uniform_int_distribution<std::size_t> pick_w(0, ws.size() - 1);
  std::uniform_real_distribution<double> logt(std::log(0.5 * plan.intervals.front().lo + 1e-3),
                                              std::log(2.0 * plan.intervals.back().hi));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Table ct("robustness_covertness", {"strategy", "kind", "support", "probability", "bound"});
  const double bound = 1.0 - 1.0 / static_cast<double>(plan.m);
  std::vector<FcAction> all_actions;
  double worst = 1.0;
  for (std::size_t trial = 0; trial < rc.strategies; ++trial) {
    const std::size_t k = 1 + trial % 25;
    std::vector<FcAction> actions;
    std::vector<double> probs;
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      actions.push_back({ws[pick_w(rng)], std::exp(logt(rng))});
      probs.push_back(u(rng) + 1e-3);
      total += probs.back();
    }
    for (double& q : probs) q /= total;
    const double p = covertness_probability(plan, actions, probs, s2);
    worst = std::min(worst, p);
    ct.add({as_int(trial), "random", as_int(k), p, bound});
    all_actions.insert(all_actions.end(), actions.begin(), actions.end());
  }
  const auto adv = adversarial_point_mass_search(plan, ws, rc.probes, s2);
  ct.add({as_int(rc.strategies), "adversarial", 1LL, adv.worst_probability, bound});
  all_actions.push_back(adv.action);
  for (const auto& iv : plan.intervals) {
    for (int w : ws) {
      for (int k = 0; k <= 20; ++k) all_actions.push_back({w, iv.lo * 0.5 + k * (iv.hi * 1.5 - iv.lo * 0.5) / 20.0});
    }
  }
  const auto table = verify_interval_exclusion(plan, all_actions, s2);

  out.summary["m"] = plan.m;
  out.summary["epsilon"] = plan.epsilon;
  out.summary["slack_factor"] = plan.slack_factor;
  out.summary["covertness_bound"] = bound;
  out.summary["worst_random_covertness"] = worst;
  out.summary["adversarial_covertness"] = adv.worst_probability;
  out.summary["adversarial_action"] = {{"W", adv.action.w}, {"t", adv.action.t}};
  out.summary["exclusion_cells"] = table.cells.size();
  out.summary["exclusion_all_outside_certified"] = table.all_outside_certified;
  out.summary["exclusion_min_outside_err_sum"] = table.min_outside_err_sum;
  out.tables.push_back(std::move(pt));
  out.tables.push_back(std::move(ct));
  return out;
}

RunResult validate(const ExperimentConfig& cfg, double tau) {
  RunResult out;
  const auto& mc = cfg.mc;
  std::mt19937_64 rng(mc.seed);
  std::uniform_real_distribution<double> pa(std::max(0.1, cfg.alice.min), cfg.alice.max);
  std::uniform_real_distribution<double> pj(std::max(0.1, cfg.jammer.min), std::max(0.1, cfg.jammer.max));
  std::uniform_real_distribution<double> scale(0.9, 1.1);
  std::uniform_int_distribution<std::size_t> pick_w(0, mc.w_set.size() - 1);
  const int n = cfg.params.n;
  const double s2 = cfg.params.sigma_w2;
  // Redraw configurations with fewer than ten expected hits or misses.
  auto normal_regime = [](double p, std::uint64_t trials) {
    return static_cast<double>(trials) * std::min(p, 1.0 - p) >= 10.0;
  };
  Table t("validate", {"config", "p_a", "p_j", "W", "t", "quantity", "analytic", "empirical",
                       "std_error", "z"});
  double worst = 0.0;
  std::size_t done = 0;
  std::size_t draws = 0;
  while (done < mc.configs) {
    if (++draws > 1000 * mc.configs) {
      throw DomainError("no configuration in the normal regime; increase mc.detection_trials");
    }
    const PowerPair pair{pa(rng), pj(rng)};
    const FcAction action{mc.w_set[pick_w(rng)], optimal_threshold(pair, s2) * scale(rng)};
    const double pfa = pfa_pure(pair.p_j, action.w, action.t, n, s2);
    const double pmd = pmd_pure(pair.p_a, pair.p_j, action.w, action.t, n, s2);
    const double pout = outage_pure(pair, tau, cfg.params.sigma_b2);
    if (!normal_regime(pfa, mc.detection_trials) || !normal_regime(pmd, mc.detection_trials)) continue;
    mc::SimConfig sim;
    sim.seed = mc.seed + done;
    sim.trials = mc.detection_trials;
    const auto d = mc::simulate_detection(pair, action, cfg.params, sim);
    sim.trials = mc.outage_trials;
    const auto o = mc::simulate_outage(pair, tau, cfg.params.sigma_b2, sim);
    const std::pair<const char*, std::pair<const mc::Estimate*, double>> rows[] = {
        {"pfa", {&d.pfa, pfa}}, {"pmd", {&d.pmd, pmd}}, {"pout", {&o, pout}}};
    for (const auto& [name, est] : rows) {
      const auto& [e, p] = est;
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(e->trials));
      const double z = sigma > 0.0 ? (e->p - p) / sigma : 0.0;
      worst = std::max(worst, std::abs(z));
      t.add({as_int(done), pair.p_a, pair.p_j, static_cast<long long>(action.w), action.t, name, p,
             e->p, e->std_error, z});
    }
    ++done;
  }
  out.summary["configs"] = done;
  out.summary["max_abs_z"] = worst;
  out.summary["within_4_sigma"] = worst <= 4.0;
  out.tables.push_back(std::move(t));
  return out;
}

}  // namespace softfusion::cli
