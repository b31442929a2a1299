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

#include "derplan/aro.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "benders.h"

namespace derplan {

const char* to_string(CutStyle style) {
  return style == CutStyle::kPrimalBlock ? "primal" : "dual";
}

const char* to_string(RobustStatus status) {
  switch (status) {
    case RobustStatus::kConverged:
      return "converged";
    case RobustStatus::kIterationLimit:
      return "iteration_limit";
    case RobustStatus::kRepeatedPoint:
      return "repeated_point";
  }
  return "unknown";
}

namespace internal {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool nonnegative_costs(const CaseData& c,
                       const std::vector<OperatingProfile>& bases) {
  if (c.costs.oc_pv < 0.0 || c.costs.oc_bt < 0.0) return false;
  for (const OperatingProfile& b : bases) {
    for (double p : b.price) {
      if (p < 0.0) return false;
    }
  }
  return true;
}

class Master {
 public:
  Master(const CaseData& c, const BendersProblem& p, CutStyle style)
      : c_(c), p_(p), style_(style), model_("master") {
    const int S = static_cast<int>(p.bases.size());
    const int T = p.bases.front().horizon();
    inv_ = add_investment(model_, c);
    for (int s = 0; s < S; ++s) {
      w_.push_back(add_commitment(model_, c, inv_, T,
                                  "w" + std::to_string(s) + "/"));
    }
    const double eta_lb = nonnegative_costs(c, p.bases) ? 0.0 : -kInf;
    if (style == CutStyle::kDual && eta_lb < 0.0) {
      throw std::invalid_argument(
          "dual cuts need nonnegative prices and operating costs");
    }
    const int num_eta = p.multi_cut ? S : 1;
    LinearExpr obj = investment_cost_expr(c, inv_);
    for (int e = 0; e < num_eta; ++e) {
      eta_.push_back(
          model_.add_variable("eta[" + std::to_string(e) + "]", eta_lb, kInf));
      obj.add(eta_.back(), 1.0);
    }
    model_.set_objective(obj, ObjectiveSense::kMinimize);
  }

  // Operational blocks of every scenario under `r`; in primal-block style they
  // also bound eta.
  void add_blocks(const Realization& r) {
    const int k = static_cast<int>(blocks_.size());
    std::vector<OperationVars> ops;
    LinearExpr total;
    for (size_t s = 0; s < p_.bases.size(); ++s) {
      const OperatingProfile profile =
          realized_profile(p_, static_cast<int>(s), r);
      const std::string prefix =
          "k" + std::to_string(k) + "s" + std::to_string(s) + "/";
      ops.push_back(add_operation(model_, c_, profile, inv_, w_[s], prefix));
      profiles_.push_back(profile);
      if (style_ != CutStyle::kPrimalBlock) continue;
      if (p_.multi_cut) {
        LinearExpr e;
        e.add(eta_[s], 1.0).add(ops.back().cost, -p_.weights[s]);
        model_.add_constraint(prefix + "eta", e, RowSense::kGreaterEqual, 0.0);
      } else {
        total.add(ops.back().cost, p_.weights[s]);
      }
    }
    if (style_ == CutStyle::kPrimalBlock && !p_.multi_cut) {
      LinearExpr e;
      e.add(eta_[0], 1.0).add(total, -1.0);
      model_.add_constraint("k" + std::to_string(k) + "/eta", e,
                            RowSense::kGreaterEqual, 0.0);
    }
    blocks_.push_back(std::move(ops));
  }

  // eta_s >= value_s + sum g (col - col_hat) with recourse columns mapped to
  // the master's.
  void add_cut(const RecourseModel& rec, const DualCut& cut,
               const FirstStage& fs) {
    std::map<VarRef, VarRef> to_master;
    std::map<VarRef, double> at;
    const int B = c_.network.num_buses();
    for (int i = 0; i < B; ++i) {
      to_master[rec.inv.nu_pv[i]] = inv_.nu_pv[i];
      to_master[rec.inv.nu_bt[i]] = inv_.nu_bt[i];
      to_master[rec.inv.gamma_pv[i]] = inv_.gamma_pv[i];
      to_master[rec.inv.gamma_bt[i]] = inv_.gamma_bt[i];
    }
    for (size_t s = 0; s < rec.w.size(); ++s) {
      for (int t = 0; t < rec.w[s].rows(); ++t) {
        for (int i = 0; i < B; ++i) to_master[rec.w[s](t, i)] = w_[s](t, i);
      }
    }
    for (const auto& [ref, value] : rec.parameters(fs)) at[ref] = value;

    const int n = static_cast<int>(cuts_);
    ++cuts_;
    LinearExpr total;
    double total_rhs = 0.0;
    for (size_t s = 0; s < cut.value.size(); ++s) {
      LinearExpr e;
      double rhs = cut.value[s];
      for (const auto& [ref, g] : cut.gradient[s]) {
        e.add(to_master.at(ref), -g);
        rhs -= g * at.at(ref);
      }
      if (p_.multi_cut) {
        e.add(eta_[s], 1.0);
        model_.add_constraint(
            "cut" + std::to_string(n) + "s" + std::to_string(s), e,
            RowSense::kGreaterEqual, rhs);
      } else {
        total.add(e);
        total_rhs += rhs;
      }
    }
    if (!p_.multi_cut) {
      total.add(eta_[0], 1.0);
      model_.add_constraint("cut" + std::to_string(n), total,
                            RowSense::kGreaterEqual, total_rhs);
    }
  }

  SolveResult solve(const SolverParams& params) const {
    SolveResult r = derplan::solve(model_, params);
    require_optimal(r, "master problem");
    return r;
  }

  FirstStage first_stage(const SolveResult& r) const {
    FirstStage fs;
    fs.inv = extract_investment(r, inv_);
    for (const VarGrid& w : w_) {
      Matrix m = extract_grid(r, w);
      for (double& v : m.data()) v = std::round(v);
      fs.w.push_back(std::move(m));
    }
    return fs;
  }

  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  // Operations of the first `count` realizations, as solved in `r`.
  void operations(const SolveResult& r, int count,
                  std::vector<OperatingProfile>& profiles,
                  std::vector<OperationValues>& ops) const {
    const size_t S = p_.bases.size();
    profiles.assign(profiles_.begin(), profiles_.begin() + count * S);
    ops.clear();
    for (int k = 0; k < count; ++k) {
      for (size_t s = 0; s < S; ++s) {
        ops.push_back(extract_operation(r, blocks_[k][s], w_[s]));
      }
    }
  }

 private:
  const CaseData& c_;
  const BendersProblem& p_;
  CutStyle style_;
  LinearModel model_;
  InvestmentVars inv_;
  std::vector<VarGrid> w_;
  std::vector<VarRef> eta_;
  std::vector<std::vector<OperationVars>> blocks_;
  std::vector<OperatingProfile> profiles_;
  int cuts_ = 0;
};

}  // namespace

OperatingProfile realized_profile(const BendersProblem& p, int s,
                                  const Realization& r) {
  if (p.pv_uncertain) return with_realization(p.bases[s], r);
  OperatingProfile out = p.bases[s];
  out.pl = r.pl;
  return out;
}

RobustSolution run_benders(const CaseData& c, const BudgetedSet& set,
                           const BendersProblem& problem,
                           const BendersOptions& options) {
  if (problem.bases.empty() || problem.bases.size() != problem.weights.size()) {
    throw std::invalid_argument("decomposition needs one weight per scenario");
  }
  if (options.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const auto start = Clock::now();
  BudgetedSet effective = set;
  if (!problem.pv_uncertain) effective.beta_pv = 0;

  RobustSolution sol;
  sol.formulation = problem.formulation;
  sol.weights = problem.weights;
  sol.lb = -kInf;
  sol.ub = kInf;

  Master master(c, problem, options.cut_style);
  const ExtremePoint nominal = nominal_point(effective);
  master.add_blocks(realize(effective, nominal));
  sol.points.push_back(nominal);

  FirstStage best;
  SolveResult last_mp;
  int solved_blocks = 0;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    IterationRecord rec;
    rec.iter = iter;
    last_mp = master.solve(options.mp_params);
    solved_blocks = master.num_blocks();
    rec.mp_time_s = last_mp.solve_time_s;
    sol.lb = std::max(sol.lb, last_mp.bound);
    const FirstStage fs = master.first_stage(last_mp);

    const auto dsp_start = Clock::now();
    const DualSubproblem dsp =
        build_dual_subproblem(c, effective, problem.bases, problem.weights, fs,
                              problem.pv_uncertain, options.dsp);
    const DspResult res =
        solve_dual_subproblem(dsp, effective, options.dsp_params);
    rec.dsp_time_s = seconds_since(dsp_start);
    sol.big_m = dsp.big_m;

    const double inv_cost = investment_cost(c, fs.inv);
    const double candidate = inv_cost + res.value;
    if (candidate < sol.ub) {
      sol.ub = candidate;
      sol.investment = fs.inv;
      sol.w = fs.w;
      sol.investment_cost = inv_cost;
      sol.operational_cost = res.value;
      sol.worst_point = res.point;
      best = fs;
    }
    rec.lb = sol.lb;
    rec.ub = sol.ub;
    rec.u_star_digest = digest(res.point);
    rec.dsp_value = res.value;
    rec.big_m_residual = res.big_m_residual;
    rec.big_m_saturated = res.big_m_saturated;
    sol.trace.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec);

    if (sol.ub - sol.lb <= options.tol * (1.0 + std::abs(sol.ub))) {
      sol.status = RobustStatus::kConverged;
      break;
    }
    const bool repeated =
        std::any_of(sol.points.begin(), sol.points.end(),
                    [&](const ExtremePoint& p) {
                      return pattern_key(p) == pattern_key(res.point);
                    });
    if (options.cut_style == CutStyle::kDual) {
      std::vector<OperatingProfile> realized;
      for (size_t s = 0; s < problem.bases.size(); ++s) {
        realized.push_back(
            realized_profile(problem, static_cast<int>(s), res.realization));
      }
      master.add_cut(dsp.recourse, dual_cut(c, dsp, realized, fs, res), fs);
    } else if (repeated) {
      sol.status = RobustStatus::kRepeatedPoint;
      break;
    }
    if (!repeated) {
      master.add_blocks(res.realization);
      sol.points.push_back(res.point);
    }
  }

  sol.master_investment = master.first_stage(last_mp).inv;
  master.operations(last_mp, solved_blocks, sol.master_profiles,
                    sol.master_operations);
  const Realization worst = realize(effective, sol.worst_point);
  for (size_t s = 0; s < problem.bases.size(); ++s) {
    sol.worst_profiles.push_back(
        realized_profile(problem, static_cast<int>(s), worst));
  }
  const RecourseResult rr = solve_recourse(c, sol.worst_profiles,
                                           problem.weights, best,
                                           options.dsp_params);
  sol.worst_operations = rr.operations;
  sol.objective = sol.ub;
  sol.solve_time_s = seconds_since(start);
  return sol;
}

}  // namespace internal

RobustSolution solve_aro(const CaseData& c, const BudgetedSet& set,
                         const AroOptions& options) {
  internal::BendersProblem p;
  p.formulation = "aro";
  p.bases = {nominal_profile(c)};
  p.weights = {1.0};
  p.pv_uncertain = true;
  return internal::run_benders(c, set, p, options);
}

}  // namespace derplan
