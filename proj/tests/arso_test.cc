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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "derplan/aro.h"
#include "derplan/arso.h"
#include "derplan/baselines.h"
#include "derplan/core_model.h"
#include "derplan/dual_subproblem.h"
#include "derplan/oracle.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

bool close(double a, double b, double rel = 1e-6) {
  return std::abs(a - b) <= rel * (1.0 + std::abs(b));
}

std::vector<OperatingProfile> nominal_load_scenarios(const CaseData& c) {
  return with_load(scenario_profiles(scenario_set(c)), c.envelope.pl_bar);
}

TEST_CASE("zero load budget is TSSO at nominal demand") {
  const CaseData c = testing::toy_case();
  const RobustSolution arso = solve_arso(c, budgeted_set(c, 0, 0));
  const PlanSolution tsso =
      solve_tsso(c, nominal_load_scenarios(c), c.probabilities);
  REQUIRE(arso.status == RobustStatus::kConverged);
  CHECK(close(arso.objective, tsso.objective));
}

TEST_CASE("scenario DSP equals the enumeration over load patterns") {
  for (uint32_t seed = 200; seed < 205; ++seed) {
    const CaseData c = testing::random_case(seed, 3, 3, 2);
    const BudgetedSet set = budgeted_set(c, 1, 0);
    const auto blocks = nominal_load_scenarios(c);
    const PlanSolution tsso = solve_tsso(c, blocks, c.probabilities);
    FirstStage fs{tsso.investment, {}};
    for (const OperationValues& op : tsso.operations) fs.w.push_back(op.w);
    const DualSubproblem dsp = build_dual_subproblem(
        c, set, blocks, c.probabilities, fs, /*pv_uncertain=*/false);
    const DspResult res = solve_dual_subproblem(dsp, set);
    const WorstCase oracle = brute_force_arso(c, set, fs.inv, fs.w);
    CHECK_MESSAGE(close(res.value, oracle.value), "seed " << seed);
    CHECK(res.big_m_residual <= 1e-6);
    // No PV binaries are active in this model.
    for (int u : res.point.u_plus) CHECK(u == 0);
    for (int u : res.point.u_minus) CHECK(u == 0);
  }
}

TEST_CASE("one scenario reduces to ARO without PV deviations") {
  const CaseData c = testing::random_case(41, 3, 4, 1);
  const BudgetedSet set = budgeted_set(c, 2, 0);
  const RobustSolution arso = solve_arso(c, set);
  const RobustSolution aro = solve_aro(c, set);
  REQUIRE(arso.status == RobustStatus::kConverged);
  REQUIRE(aro.status == RobustStatus::kConverged);
  CHECK(close(arso.objective, aro.objective));
}

TEST_CASE("single cut is exact; per-scenario cuts never undercut it") {
  const CaseData c = testing::toy_case();
  const BudgetedSet set = budgeted_set(c, 2, 0);
  ArsoOptions single, multi;
  multi.multi_cut = true;
  const RobustSolution a = solve_arso(c, set, single);
  const RobustSolution b = solve_arso(c, set, multi);
  REQUIRE(a.status == RobustStatus::kConverged);
  REQUIRE(b.status == RobustStatus::kConverged);
  for (const RobustSolution* s : {&a, &b}) {
    for (size_t k = 1; k < s->trace.size(); ++k) {
      CHECK(s->trace[k].lb >= s->trace[k - 1].lb - 1e-9);
    }
    CHECK(s->w.size() == 2);
    for (size_t k = 0; k < s->master_operations.size(); ++k) {
      CHECK(check_feasibility(c, s->master_investment, s->master_operations[k],
                              s->master_profiles[k])
                .feasible(1e-6));
    }
    // The reported cost is the true expected worst case of the plan.
    const WorstCase wc = brute_force_arso(c, set, s->investment, s->w);
    CHECK(close(s->operational_cost, wc.value));
  }
  // Separate etas let each scenario pick its own past realization, so the
  // plan they settle on is never cheaper than the exact one.
  CHECK(b.objective >= a.objective - 1e-6 * (1 + a.objective));
}

TEST_CASE("dual cuts reach the same ARSO optimum") {
  const CaseData c = testing::toy_case();
  const BudgetedSet set = budgeted_set(c, 1, 0);
  ArsoOptions dual;
  dual.cut_style = CutStyle::kDual;
  const RobustSolution a = solve_arso(c, set);
  const RobustSolution b = solve_arso(c, set, dual);
  REQUIRE(b.status == RobustStatus::kConverged);
  CHECK(close(a.objective, b.objective));
}

TEST_CASE("objective is monotone in the load budget") {
  const CaseData c = testing::random_case(52, 3, 4, 2);
  double previous = 0.0;
  for (int beta = 0; beta <= 4; ++beta) {
    const RobustSolution s = solve_arso(c, budgeted_set(c, beta, 0));
    REQUIRE(s.status == RobustStatus::kConverged);
    CHECK(s.objective >= previous - 1e-6 * (1 + previous));
    previous = s.objective;
  }
}

TEST_CASE("PV budget is ignored") {
  const CaseData c = testing::toy_case();
  const RobustSolution a = solve_arso(c, budgeted_set(c, 1, 0));
  const RobustSolution b = solve_arso(c, budgeted_set(c, 1, 3));
  CHECK(close(a.objective, b.objective));
}

}  // namespace
}  // namespace derplan
