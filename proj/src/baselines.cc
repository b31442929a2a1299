// Copyright 2026 The derplan Authors.
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

#include "derplan/baselines.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace derplan {
namespace {

// Indices of the `count` largest scores, earlier index first on ties.
std::vector<int> top_slots(const std::vector<double>& score, int count) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  order.resize(std::min<size_t>(count, order.size()));
  return order;
}

}  // namespace

std::vector<OperatingProfile> scenario_profiles(const ScenarioSet& s) {
  std::vector<OperatingProfile> out;
  for (int k = 0; k < s.size(); ++k) {
    OperatingProfile p;
    for (int t = 0; t < s.pv.rows(); ++t) {
      p.pv.push_back(s.pv(t, k));
      p.price.push_back(s.price(t, k));
    }
    p.pl = s.pl[k];
    p.ql = s.ql[k];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<OperatingProfile> with_load(std::vector<OperatingProfile> profiles,
                                        const Matrix& pl) {
  for (OperatingProfile& p : profiles) {
    if (p.pl.rows() != pl.rows() || p.pl.cols() != pl.cols()) {
      throw std::invalid_argument("load matrix does not match the profile");
    }
    p.pl = pl;
  }
  return profiles;
}

TssoModel build_tsso(const CaseData& c,
                     const std::vector<OperatingProfile>& profiles,
                     const std::vector<double>& probabilities) {
  if (profiles.empty()) throw std::invalid_argument("TSSO needs scenarios");
  if (profiles.size() != probabilities.size()) {
    throw std::invalid_argument("one probability per scenario expected");
  }
  TssoModel m{LinearModel("tsso"), {}, {}, {}};
  m.inv = add_investment(m.model, c);
  LinearExpr obj = investment_cost_expr(c, m.inv);
  for (size_t s = 0; s < profiles.size(); ++s) {
    const std::string prefix = "s" + std::to_string(s) + "/";
    m.w.push_back(
        add_commitment(m.model, c, m.inv, profiles[s].horizon(), prefix));
    m.ops.push_back(
        add_operation(m.model, c, profiles[s], m.inv, m.w.back(), prefix));
    obj.add(m.ops.back().cost, probabilities[s]);
  }
  m.model.set_objective(obj, ObjectiveSense::kMinimize);
  return m;
}

TssoModel build_tsso(const CaseData& c, const ScenarioSet& scenarios) {
  return build_tsso(c, scenario_profiles(scenarios), scenarios.probabilities);
}

PlanSolution solve_tsso(const CaseData& c,
                        const std::vector<OperatingProfile>& profiles,
                        const std::vector<double>& probabilities,
                        const SolverParams& params) {
  TssoModel m = build_tsso(c, profiles, probabilities);
  const SolveResult r = solve(m.model, params);
  require_optimal(r, "TSSO model");
  PlanSolution sol;
  sol.formulation = "tsso";
  sol.investment = extract_investment(r, m.inv);
  sol.investment_cost = investment_cost(c, sol.investment);
  for (size_t s = 0; s < profiles.size(); ++s) {
    sol.operations.push_back(extract_operation(r, m.ops[s], m.w[s]));
    sol.profiles.push_back(profiles[s]);
    sol.weights.push_back(probabilities[s]);
    sol.operational_cost +=
        probabilities[s] * operational_cost(c, sol.operations[s], profiles[s]);
  }
  sol.objective = r.objective;
  sol.solve_time_s = r.solve_time_s;
  return sol;
}

PlanSolution solve_tsso(const CaseData& c, const ScenarioSet& scenarios,
                        const SolverParams& params) {
  return solve_tsso(c, scenario_profiles(scenarios), scenarios.probabilities,
                    params);
}

Realization sro_realization(const BudgetedSet& set,
                            const std::vector<double>& price,
                            SroPvRule pv_rule, SroLoadRule load_rule) {
  const int T = set.horizon();
  const int B = set.num_buses();
  if (static_cast<int>(price.size()) != T) {
    throw std::invalid_argument("price vector does not match the horizon");
  }
  Realization r{set.pv_bar, set.pl_bar};
  for (int i = 0; i < B && set.beta_pl > 0; ++i) {
    if (load_rule == SroLoadRule::kAllSlots) {
      for (int t = 0; t < T; ++t) r.pl(t, i) += set.pl_hat(t, i);
      continue;
    }
    std::vector<double> score(T);
    for (int t = 0; t < T; ++t) score[t] = set.pl_hat(t, i) * price[t];
    for (int t : top_slots(score, set.beta_pl)) r.pl(t, i) += set.pl_hat(t, i);
  }
  if (set.beta_pv > 0) {
    if (pv_rule == SroPvRule::kAllSlots) {
      for (int t = 0; t < T; ++t) r.pv[t] -= set.pv_hat[t];
    } else {
      for (int t : top_slots(set.pv_bar, set.beta_pv)) r.pv[t] -= set.pv_hat[t];
    }
  }
  return r;
}

PlanSolution solve_sro(const CaseData& c, const BudgetedSet& set,
                       const SroOptions& options, const SolverParams& params) {
  const OperatingProfile nominal = nominal_profile(c);
  const Realization r = sro_realization(set, nominal.price, options.pv_rule, options.load_rule);
  PlanSolution sol =
      solve_deterministic(c, with_realization(nominal, r), params);
  sol.formulation = "sro";
  return sol;
}

}  // namespace derplan
