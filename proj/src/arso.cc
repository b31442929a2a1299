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

#include "derplan/arso.h"

#include "benders.h"
#include "derplan/baselines.h"

namespace derplan {

RobustSolution solve_arso(const CaseData& c, const BudgetedSet& set,
                          const ArsoOptions& options) {
  const ScenarioSet scenarios = scenario_set(c);
  internal::BendersProblem p;
  p.formulation = "arso";
  p.bases = with_load(scenario_profiles(scenarios), set.pl_bar);
  p.weights = scenarios.probabilities;
  p.pv_uncertain = false;
  p.multi_cut = options.multi_cut;
  return internal::run_benders(c, set, p, options);
}

}  // namespace derplan
