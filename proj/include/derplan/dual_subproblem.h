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

// Recourse problems for fixed first-stage decisions and their dual
// subproblems (DSP) with extreme-point binaries.
//
// A recourse model holds one operational block per scenario (a single block
// for ARO). Its columns for sizes and charging indicators are parameters: the
// primal LP fixes them, the DSP folds them into the dual objective. The DSP is
// the mechanical dual of that LP plus
//   - binaries U+/U- (per slot) and V+/V- (per slot and bus) with the
//     exclusivity and budget rows,
//   - products y*B of a dual y and a binary B, linearized with big-M rows,
//   - the deviation terms -PLhat (a+ - a-) per active balance row and
//     PVhat gamma_pv (i+ - i-) per PV availability row.

#ifndef DERPLAN_DUAL_SUBPROBLEM_H_
#define DERPLAN_DUAL_SUBPROBLEM_H_

#include <map>
#include <utility>
#include <vector>

#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/milp.h"
#include "derplan/uncertainty.h"

namespace derplan {

// First-stage decisions as seen by the recourse: sizes plus one charging
// schedule per block.
struct FirstStage {
  InvestmentValues inv;
  std::vector<Matrix> w;
};

struct RecourseModel {
  LinearModel model;
  InvestmentVars inv;
  std::vector<VarGrid> w;
  std::vector<OperationVars> ops;
  std::vector<double> weights;
  std::vector<std::pair<int, int>> rows;  // [begin, end) per block

  std::map<VarRef, double> parameters(const FirstStage& fs) const;
};

// min sum_k weights[k] * cost_k over the blocks, first stage as columns.
RecourseModel build_recourse(const CaseData& c,
                             const std::vector<OperatingProfile>& blocks,
                             const std::vector<double>& weights);

struct RecourseResult {
  double value = 0.0;
  std::vector<double> block_values;  // weighted cost per block
  std::vector<OperationValues> operations;
  SolveResult raw;
};

// Solves the recourse LP with the first stage fixed. Throws SolverError when
// the LP is not optimal.
RecourseResult solve_recourse(const CaseData& c,
                              const std::vector<OperatingProfile>& blocks,
                              const std::vector<double>& weights,
                              const FirstStage& fs,
                              const SolverParams& params = {});

// y * B modeled by z with z <= M B, z >= -M B, z - y <= M (1 - B),
// z - y >= -M (1 - B).
struct BilinearAux {
  VarRef z;
  VarRef y;
  VarRef binary;
};

struct DualSubproblem {
  LinearModel model;
  LpDual dual;
  RecourseModel recourse;
  std::vector<VarRef> u_plus, u_minus;  // per slot; ub 0 where no deviation
  VarGrid v_plus, v_minus;              // slots x buses
  std::vector<BilinearAux> aux;
  std::vector<LinearExpr> block_value;  // dual objective split per block
  double big_m = 0.0;
  bool pv_uncertain = true;
};

struct DspOptions {
  // Bound on the duals multiplied by binaries. Zero selects
  // max(max(pl_bar + pl_hat), max(pv_bar + pv_hat)).
  double big_m = 0.0;
  // Only upward load and downward PV deviations. Exact when those dominate
  // (nonnegative prices and no binding upper voltage limits); otherwise a
  // restriction of the set.
  bool adverse_only = false;
};

double default_big_m(const BudgetedSet& set);

// `blocks` carry the nominal load (and nominal PV when `pv_uncertain`).
DualSubproblem build_dual_subproblem(const CaseData& c, const BudgetedSet& set,
                                     const std::vector<OperatingProfile>& blocks,
                                     const std::vector<double>& weights,
                                     const FirstStage& fs, bool pv_uncertain,
                                     const DspOptions& options = {});

struct DspResult {
  double value = 0.0;
  std::vector<double> block_values;
  ExtremePoint point;
  Realization realization;
  double big_m_residual = 0.0;  // max |z - y*B| over the linearized products
  int big_m_saturated = 0;      // products with |y| at the big-M bound
  SolveResult raw;
};

// Throws SolverError when the DSP is not optimal; an unbounded DSP means the
// first stage leaves some realization without a feasible recourse.
DspResult solve_dual_subproblem(const DualSubproblem& dsp,
                                const BudgetedSet& set,
                                const SolverParams& params = {});

// Copy of the DSP with every U/V binary fixed to the pattern.
LinearModel fix_pattern(const DualSubproblem& dsp, const ExtremePoint& ep);

// Linear cut data: block k's value at (x, w) is at least
// value[k] + sum gradient[k][col] * (col - col_hat), with columns of the
// recourse model. Built from the DSP duals at the realization found.
struct DualCut {
  std::vector<double> value;
  std::vector<std::map<VarRef, double>> gradient;
};

DualCut dual_cut(const CaseData& c, const DualSubproblem& dsp,
                 const std::vector<OperatingProfile>& realized_blocks,
                 const FirstStage& fs, const DspResult& result);

}  // namespace derplan

#endif  // DERPLAN_DUAL_SUBPROBLEM_H_
