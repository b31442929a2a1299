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

// Deterministic planning model and the reusable pieces every formulation is
// assembled from: the investment block, the battery commitment binaries and
// one operational block per horizon.
//
// Operational blocks only use sign bounds (>= 0 or free) on their columns;
// every other limit is an explicit row. This keeps blocks directly
// dualizable with `dualize()` once the first-stage columns are treated as
// parameters.

#ifndef DERPLAN_DETERMINISTIC_H_
#define DERPLAN_DETERMINISTIC_H_

#include <map>
#include <string>
#include <vector>

#include "derplan/core_model.h"
#include "derplan/milp.h"

namespace derplan {

using VarGrid = Grid<VarRef>;

struct InvestmentVars {
  std::vector<VarRef> nu_pv, nu_bt;        // binary per bus
  std::vector<VarRef> gamma_pv, gamma_bt;  // kW, kWh per bus
};

struct InvestmentValues {
  std::vector<double> nu_pv, nu_bt, gamma_pv, gamma_bt;

  double total_pv() const;
  double total_bt() const;
  int pv_sites() const;
  int bt_sites() const;
};

// Columns and selected rows of one operational block. Grids are slots x buses
// except p and q, which are slots x lines.
struct OperationVars {
  VarGrid pg, qg, pv, ch, ds, soc, v, theta;
  VarGrid p, q;
  LinearExpr cost;       // sum of grid, PV and discharge cost over the block
  Grid<int> balance;     // active balance row per (slot, bus)
  Grid<int> pv_limit;    // PV availability row per (slot, bus)
};

struct OperationValues {
  Matrix pg, qg, pv, ch, ds, soc, w, v, theta;
  Matrix p, q;
};

// Net injections pg + pv - pl + ds - ch and qg - ql.
Matrix delta_p(const OperationValues& op, const OperatingProfile& profile);
Matrix delta_q(const OperationValues& op, const OperatingProfile& profile);

// Sizing variables, with the capacity and site-count rows unless `rows` is
// false (recourse models that only read the sizes as parameters).
InvestmentVars add_investment(LinearModel& model, const CaseData& c,
                              bool rows = true);
LinearExpr investment_cost_expr(const CaseData& c, const InvestmentVars& inv);

// Charging indicators w (slots x buses), linked by w <= nu_bt when `rows`.
VarGrid add_commitment(LinearModel& model, const CaseData& c,
                       const InvestmentVars& inv, int horizon,
                       const std::string& prefix, bool rows = true);

// Network and battery rows for one horizon. `prefix` keeps names unique when a
// model holds several blocks.
OperationVars add_operation(LinearModel& model, const CaseData& c,
                            const OperatingProfile& profile,
                            const InvestmentVars& inv, const VarGrid& w,
                            const std::string& prefix);

struct DeterministicModel {
  LinearModel model;
  InvestmentVars inv;
  VarGrid w;
  OperationVars op;
};

// min investment cost + operational cost on a single horizon.
DeterministicModel build_deterministic(const CaseData& c,
                                       const OperatingProfile& profile);
// Same, using nominal reactive load and prices around the realization.
DeterministicModel build_deterministic(const CaseData& c,
                                       const Realization& realization);

InvestmentValues extract_investment(const SolveResult& r,
                                    const InvestmentVars& inv);
OperationValues extract_operation(const SolveResult& r, const OperationVars& op,
                                  const VarGrid& w);
Matrix extract_grid(const SolveResult& r, const VarGrid& vars);

// Column assignment that pins the first-stage decisions of a model.
std::map<VarRef, double> first_stage_assignment(const InvestmentVars& vars,
                                                const InvestmentValues& values,
                                                const VarGrid& w_vars,
                                                const Matrix& w_values);

double investment_cost(const CaseData& c, const InvestmentValues& inv);
double operational_cost(const CaseData& c, const OperationValues& op,
                        const OperatingProfile& profile);

// Largest residual per constraint family, evaluated directly from the
// formulas rather than from a built model.
struct ResidualReport {
  std::map<std::string, double> max_residual;

  double worst() const;
  bool feasible(double tol) const { return worst() <= tol; }
  std::vector<std::string> violated(double tol) const;
};

ResidualReport check_feasibility(const CaseData& c, const InvestmentValues& inv,
                                 const OperationValues& op,
                                 const OperatingProfile& profile);

// Outcome of a single-shot MILP formulation (deterministic, TSSO, SRO, PI).
struct PlanSolution {
  std::string formulation;
  double objective = 0.0;
  double investment_cost = 0.0;
  double operational_cost = 0.0;  // probability-weighted over `operations`
  InvestmentValues investment;
  std::vector<OperationValues> operations;
  std::vector<OperatingProfile> profiles;  // data each operation was run on
  std::vector<double> weights;             // one per operation
  double solve_time_s = 0.0;
};

// Throws SolverError unless the solve ended optimal.
void require_optimal(const SolveResult& r, const std::string& what);

PlanSolution solve_deterministic(const CaseData& c,
                                 const OperatingProfile& profile,
                                 const SolverParams& params = {});

// Operational re-solve with the investment fixed (w stays free). Returns the
// operating cost on `profile`, or throws SolverError when the plan cannot
// serve it.
PlanSolution evaluate_plan(const CaseData& c, const InvestmentValues& inv,
                           const OperatingProfile& profile,
                           const SolverParams& params = {});

}  // namespace derplan

#endif  // DERPLAN_DETERMINISTIC_H_
