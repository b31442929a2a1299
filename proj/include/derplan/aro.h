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

// Adaptive robust optimization solved by column-and-constraint generation.
//
// The master problem holds the investment, the charging schedule w and one
// operational block per realization found so far. The dual subproblem returns
// the worst realization for the master's plan. With the default
// `CutStyle::kPrimalBlock` each block bounds eta directly; with
// `CutStyle::kDual` blocks only enforce feasibility and eta is bounded by
// linear cuts built from the subproblem duals.
//
//   AroOptions opt;
//   opt.tol = 1e-6;
//   RobustSolution sol = solve_aro(c, budgeted_set(c, 10, 10), opt);
//   if (sol.status != RobustStatus::kConverged) ...

#ifndef DERPLAN_ARO_H_
#define DERPLAN_ARO_H_

#include <functional>
#include <string>
#include <vector>

#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/dual_subproblem.h"
#include "derplan/milp.h"
#include "derplan/uncertainty.h"

namespace derplan {

enum class CutStyle { kPrimalBlock, kDual };
enum class RobustStatus { kConverged, kIterationLimit, kRepeatedPoint };

const char* to_string(CutStyle style);
const char* to_string(RobustStatus status);

struct IterationRecord {
  int iter = 0;
  double lb = 0.0;
  double ub = 0.0;
  double mp_time_s = 0.0;
  double dsp_time_s = 0.0;
  std::string u_star_digest;
  double dsp_value = 0.0;      // worst-case operating cost found
  double big_m_residual = 0.0;
  int big_m_saturated = 0;
};

struct BendersOptions {
  double tol = 1e-6;  // stop when ub - lb <= tol * (1 + |ub|)
  int max_iter = 200;
  CutStyle cut_style = CutStyle::kPrimalBlock;
  SolverParams mp_params{1e-6, 1e-7};
  SolverParams dsp_params{1e-6, 1e-7};
  DspOptions dsp;
  // Called after every iteration; used for progress output.
  std::function<void(const IterationRecord&)> on_iteration;
};

using AroOptions = BendersOptions;

struct RobustSolution {
  std::string formulation;
  RobustStatus status = RobustStatus::kIterationLimit;
  double lb = 0.0;
  double ub = 0.0;
  double objective = 0.0;  // ub: investment cost + worst-case operation
  double investment_cost = 0.0;
  double operational_cost = 0.0;  // worst-case (expected for ARSO)
  InvestmentValues investment;
  std::vector<Matrix> w;  // one per scenario (a single one for ARO)
  std::vector<IterationRecord> trace;
  std::vector<ExtremePoint> points;  // realizations added to the master
  // Worst case found for the returned plan, operated optimally.
  ExtremePoint worst_point;
  std::vector<OperatingProfile> worst_profiles;
  std::vector<OperationValues> worst_operations;
  std::vector<double> weights;
  // Plan and operations of the last master, one per recorded block and
  // scenario.
  InvestmentValues master_investment;
  std::vector<OperatingProfile> master_profiles;
  std::vector<OperationValues> master_operations;
  double big_m = 0.0;
  double solve_time_s = 0.0;

  int iterations() const { return static_cast<int>(trace.size()); }
};

RobustSolution solve_aro(const CaseData& c, const BudgetedSet& set,
                         const AroOptions& options = {});

}  // namespace derplan

#endif  // DERPLAN_ARO_H_
