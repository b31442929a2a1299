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

// Adaptive robust stochastic optimization: PV, prices and reactive load follow
// the scenarios, active load follows the budgeted set. A single load
// realization is shared by every scenario and the objective weighs the
// scenario operating costs by their probabilities. Each scenario keeps its own
// charging schedule.

#ifndef DERPLAN_ARSO_H_
#define DERPLAN_ARSO_H_

#include "derplan/aro.h"
#include "derplan/core_model.h"
#include "derplan/uncertainty.h"

namespace derplan {

struct ArsoOptions : BendersOptions {
  // One eta per scenario, bounded by that scenario's blocks alone. The load
  // realization is shared by all scenarios, so the master then overestimates
  // the expected worst case and may stop at a costlier plan; the default
  // single eta is exact.
  bool multi_cut = false;
};

// Scenarios come from the case. PV deviations of `set` are ignored.
RobustSolution solve_arso(const CaseData& c, const BudgetedSet& set,
                          const ArsoOptions& options = {});

}  // namespace derplan

#endif  // DERPLAN_ARSO_H_
