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

// Study runners shared by the command line tool and the Python module: one
// formulation at a time, budget sweeps and plan evaluation on the
// concatenated scenario horizon.

#ifndef DERPLAN_STUDY_H_
#define DERPLAN_STUDY_H_

#include <optional>
#include <string>
#include <vector>

#include "derplan/aro.h"
#include "derplan/arso.h"
#include "derplan/baselines.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/reports.h"

namespace derplan {

enum class Formulation { kDeterministic, kTsso, kSro, kAro, kArso };

// "det", "tsso", "sro", "aro", "arso".
const char* to_string(Formulation f);
// Throws std::invalid_argument for unknown names.
Formulation parse_formulation(const std::string& name);

struct StudyOptions {
  int beta_pl = 0;
  int beta_pv = 0;
  SolverParams params;  // single-shot models
  ArsoOptions benders;  // ARO uses the shared fields
  SroOptions sro;
};

struct StudyResult {
  ReportRow row;
  InvestmentValues investment;
  std::optional<PlanSolution> plan;
  std::optional<RobustSolution> robust;
};

StudyResult run_formulation(const CaseData& c, Formulation f,
                            const StudyOptions& options);

// det and tsso once, then sro, aro and arso for each beta applied to both
// budgets, in that order.
std::vector<StudyResult> sweep(const CaseData& c, const std::vector<int>& betas,
                               const StudyOptions& options);

// Investment cost plus the optimal operation of `inv` over every scenario
// concatenated, comparable with the perfect-information objective.
double realized_cost(const CaseData& c, const InvestmentValues& inv,
                     const SolverParams& params = {});

}  // namespace derplan

#endif  // DERPLAN_STUDY_H_
