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

// Two-stage stochastic (extensive form) and single-stage robust baselines.

#ifndef DERPLAN_BASELINES_H_
#define DERPLAN_BASELINES_H_

#include <vector>

#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/milp.h"
#include "derplan/uncertainty.h"

namespace derplan {

// One operating profile per scenario of the set.
std::vector<OperatingProfile> scenario_profiles(const ScenarioSet& s);
// Scenario profiles with the active load replaced by `pl`.
std::vector<OperatingProfile> with_load(std::vector<OperatingProfile> profiles,
                                        const Matrix& pl);

struct TssoModel {
  LinearModel model;
  InvestmentVars inv;
  std::vector<VarGrid> w;
  std::vector<OperationVars> ops;
};

// Shared investment, one operational block and charging schedule per
// scenario, objective investment cost + sum_s rho_s cost_s.
TssoModel build_tsso(const CaseData& c,
                     const std::vector<OperatingProfile>& profiles,
                     const std::vector<double>& probabilities);
TssoModel build_tsso(const CaseData& c, const ScenarioSet& scenarios);

PlanSolution solve_tsso(const CaseData& c,
                        const std::vector<OperatingProfile>& profiles,
                        const std::vector<double>& probabilities,
                        const SolverParams& params = {});
PlanSolution solve_tsso(const CaseData& c, const ScenarioSet& scenarios,
                        const SolverParams& params = {});

// Which slots the single-stage robust proxy moves to their bad side.
//
// Operations fixed before the data is known must hold each balance row on
// its own. Every such row carries one load and one PV deviation, so any
// budget of one or more protects it fully: the row-wise robust counterpart
// is the all-slots realization, which bounds every point of the set when
// cost grows with load and falls with PV.
enum class SroPvRule {
  // bar - hat in every slot once beta_pv >= 1.
  kAllSlots,
  // bar - hat only in the beta_pv slots of largest bar.
  kTopPvBar,
};

enum class SroLoadRule {
  // bar + hat in every slot once beta_pl >= 1.
  kAllSlots,
  // bar + hat in the beta_pl slots of largest hat * price per bus (earlier
  // slot on ties). This point lies in the set, so it cannot exceed ARO.
  kTopHatPrice,
};

struct SroOptions {
  SroPvRule pv_rule = SroPvRule::kAllSlots;
  SroLoadRule load_rule = SroLoadRule::kAllSlots;
};

Realization sro_realization(const BudgetedSet& set,
                            const std::vector<double>& price,
                            SroPvRule pv_rule,
                            SroLoadRule load_rule = SroLoadRule::kAllSlots);

// Deterministic model on the SRO realization with nominal prices.
PlanSolution solve_sro(const CaseData& c, const BudgetedSet& set,
                       const SroOptions& options = {},
                       const SolverParams& params = {});

}  // namespace derplan

#endif  // DERPLAN_BASELINES_H_
