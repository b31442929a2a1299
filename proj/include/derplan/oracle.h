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

// Reference computations that do not go through the decomposition engines:
// worst-case search by enumeration, the perfect-information benchmark and the
// autonomy curve.

#ifndef DERPLAN_ORACLE_H_
#define DERPLAN_ORACLE_H_

#include <cstdint>
#include <vector>

#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/dual_subproblem.h"
#include "derplan/milp.h"
#include "derplan/uncertainty.h"

namespace derplan {

struct WorstCase {
  double value = 0.0;
  ExtremePoint point;
  Realization realization;
  uint64_t evaluated = 0;
};

struct OracleOptions {
  uint64_t limit = 100000;  // extreme points; CapacityError beyond
  int threads = 0;          // 0 picks the hardware concurrency
  SolverParams params;
};

// max over the extreme points of the recourse LP with the first stage fixed.
// Blocks and weights as for build_dual_subproblem; with `pv_uncertain` false
// only the load varies and each block keeps its own PV. Ties go to the
// lexicographically smallest pattern.
WorstCase brute_force_worst_case(const CaseData& c, const BudgetedSet& set,
                                 const std::vector<OperatingProfile>& blocks,
                                 const std::vector<double>& weights,
                                 const FirstStage& fs, bool pv_uncertain,
                                 const OracleOptions& options = {});

// Single nominal block, PV and load uncertain.
WorstCase brute_force_aro(const CaseData& c, const BudgetedSet& set,
                          const InvestmentValues& inv, const Matrix& w,
                          const OracleOptions& options = {});

// Scenario blocks at nominal load, only the load uncertain.
WorstCase brute_force_arso(const CaseData& c, const BudgetedSet& set,
                           const InvestmentValues& inv,
                           const std::vector<Matrix>& w,
                           const OracleOptions& options = {});

// Deterministic model over every scenario concatenated into one horizon, with
// the state of charge chained across scenario boundaries.
PlanSolution perfect_information_benchmark(const CaseData& c,
                                           const SolverParams& params = {});

// 1 - sum pg / sum pl over the operation.
double achieved_autonomy(const OperationValues& op,
                         const OperatingProfile& profile);

struct AutonomyPoint {
  double level = 0.0;
  bool feasible = false;
  double achieved = 0.0;
  double objective = 0.0;
  double investment_cost = 0.0;
  double operational_cost = 0.0;
  double pv_capacity = 0.0;
  double bt_capacity = 0.0;
};

// Deterministic solves on `profile` with sum pg <= (1 - level) sum pl added.
std::vector<AutonomyPoint> autonomy_curve(const CaseData& c,
                                          const OperatingProfile& profile,
                                          const std::vector<double>& levels,
                                          const SolverParams& params = {});

}  // namespace derplan

#endif  // DERPLAN_ORACLE_H_
