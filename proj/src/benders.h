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

// Decomposition loop shared by the ARO and ARSO engines.

#ifndef DERPLAN_SRC_BENDERS_H_
#define DERPLAN_SRC_BENDERS_H_

#include <string>
#include <vector>

#include "derplan/aro.h"

namespace derplan::internal {

struct BendersProblem {
  std::string formulation;
  // Scenario profiles around which realizations are applied, with weights.
  std::vector<OperatingProfile> bases;
  std::vector<double> weights;
  // PV follows the set (ARO) or stays at each base's own values (ARSO).
  bool pv_uncertain = true;
  // One eta per scenario instead of a single one.
  bool multi_cut = false;
};

// Profile of scenario `s` under realization `r`.
OperatingProfile realized_profile(const BendersProblem& p, int s,
                                  const Realization& r);

RobustSolution run_benders(const CaseData& c, const BudgetedSet& set,
                           const BendersProblem& problem,
                           const BendersOptions& options);

}  // namespace derplan::internal

#endif  // DERPLAN_SRC_BENDERS_H_
