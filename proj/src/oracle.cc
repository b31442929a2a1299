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

#include "derplan/oracle.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "derplan/baselines.h"

namespace derplan {
namespace {

std::vector<OperatingProfile> realized_blocks(
    const std::vector<OperatingProfile>& blocks, const Realization& r,
    bool pv_uncertain) {
  std::vector<OperatingProfile> out;
  for (const OperatingProfile& b : blocks) {
    if (pv_uncertain) {
      out.push_back(with_realization(b, r));
    } else {
      out.push_back(b);
      out.back().pl = r.pl;
    }
  }
  return out;
}

// Recourse value, +inf when the realization cannot be served.
double recourse_value(const CaseData& c,
                      const std::vector<OperatingProfile>& blocks,
                      const std::vector<double>& weights, const FirstStage& fs,
                      const SolverParams& params) {
  RecourseResult r;
  try {
    r = solve_recourse(c, blocks, weights, fs, params);
  } catch (const SolverError&) {
    return kInf;
  }
  return r.value;
}

}  // namespace

WorstCase brute_force_worst_case(const CaseData& c, const BudgetedSet& set,
                                 const std::vector<OperatingProfile>& blocks,
                                 const std::vector<double>& weights,
                                 const FirstStage& fs, bool pv_uncertain,
                                 const OracleOptions& options) {
  BudgetedSet effective = set;
  if (!pv_uncertain) effective.beta_pv = 0;
  const std::vector<ExtremePoint> points =
      enumerate_extreme_points(effective, options.limit);
  std::vector<double> values(points.size());

  const size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t workers = std::min(
      points.size(), options.threads > 0 ? size_t(options.threads) : hw);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](size_t id) {
    try {
      for (size_t k = id; k < points.size(); k += workers) {
        const Realization r = realize(effective, points[k]);
        values[k] = recourse_value(c, realized_blocks(blocks, r, pv_uncertain),
                                   weights, fs, options.params);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (workers <= 1) {
    if (workers == 1) work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  WorstCase best;
  best.value = -kInf;
  best.evaluated = points.size();
  std::vector<int> best_key;
  for (size_t k = 0; k < points.size(); ++k) {
    const std::vector<int> key = pattern_key(points[k]);
    const double tie = 1e-9 * (1.0 + std::abs(values[k]));
    const bool better = values[k] > best.value + tie;
    const bool tied = std::abs(values[k] - best.value) <= tie ||
                      (std::isinf(values[k]) && values[k] == best.value);
    if (better || (tied && key < best_key)) {
      best.value = values[k];
      best.point = points[k];
      best_key = key;
    }
  }
  best.realization = realize(effective, best.point);
  return best;
}

WorstCase brute_force_aro(const CaseData& c, const BudgetedSet& set,
                          const InvestmentValues& inv, const Matrix& w,
                          const OracleOptions& options) {
  return brute_force_worst_case(c, set, {nominal_profile(c)}, {1.0},
                                FirstStage{inv, {w}}, true, options);
}

WorstCase brute_force_arso(const CaseData& c, const BudgetedSet& set,
                           const InvestmentValues& inv,
                           const std::vector<Matrix>& w,
                           const OracleOptions& options) {
  const ScenarioSet s = scenario_set(c);
  return brute_force_worst_case(c, set,
                                with_load(scenario_profiles(s), set.pl_bar),
                                s.probabilities, FirstStage{inv, w}, false,
                                options);
}

PlanSolution perfect_information_benchmark(const CaseData& c,
                                           const SolverParams& params) {
  PlanSolution sol = solve_deterministic(c, concatenated_profile(c), params);
  sol.formulation = "pi";
  return sol;
}

double achieved_autonomy(const OperationValues& op,
                         const OperatingProfile& profile) {
  double pg = 0.0;
  double pl = 0.0;
  for (double v : op.pg.data()) pg += v;
  for (double v : profile.pl.data()) pl += v;
  if (pl <= 0.0) throw std::invalid_argument("autonomy needs a positive load");
  return 1.0 - pg / pl;
}

std::vector<AutonomyPoint> autonomy_curve(const CaseData& c,
                                          const OperatingProfile& profile,
                                          const std::vector<double>& levels,
                                          const SolverParams& params) {
  double total_load = 0.0;
  for (double v : profile.pl.data()) total_load += v;
  std::vector<AutonomyPoint> out;
  for (double level : levels) {
    if (!(level >= 0.0 && level <= 1.0)) {
      throw std::invalid_argument("autonomy levels must lie in [0, 1]");
    }
    DeterministicModel m = build_deterministic(c, profile);
    LinearExpr imports;
    for (VarRef v : m.op.pg.data()) imports.add(v, 1.0);
    m.model.add_constraint("autonomy", imports, RowSense::kLessEqual,
                           (1.0 - level) * total_load);
    const SolveResult r = solve(m.model, params);
    AutonomyPoint p;
    p.level = level;
    if (r.status == SolveStatus::kInfeasible) {
      out.push_back(p);
      continue;
    }
    require_optimal(r, "autonomy model");
    const InvestmentValues inv = extract_investment(r, m.inv);
    const OperationValues op = extract_operation(r, m.op, m.w);
    p.feasible = true;
    p.achieved = achieved_autonomy(op, profile);
    p.objective = r.objective;
    p.investment_cost = investment_cost(c, inv);
    p.operational_cost = operational_cost(c, op, profile);
    p.pv_capacity = inv.total_pv();
    p.bt_capacity = inv.total_bt();
    out.push_back(p);
  }
  return out;
}

}  // namespace derplan
