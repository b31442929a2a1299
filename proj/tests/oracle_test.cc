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
#include <limits>

#include "derplan/baselines.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/oracle.h"
#include "derplan/study.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

TEST_CASE("zero budget: nominal point and nominal value") {
  const CaseData c = testing::toy_case();
  const BudgetedSet set = budgeted_set(c, 0, 0);
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  const WorstCase wc =
      brute_force_aro(c, set, det.investment, det.operations[0].w);
  CHECK(wc.evaluated == 1);
  CHECK(wc.point == nominal_point(set));
  CHECK(wc.value == doctest::Approx(det.operational_cost).epsilon(1e-7));
}

TEST_CASE("worker count does not change the answer") {
  const CaseData c = testing::random_case(8, 4, 3, 1);
  const BudgetedSet set = budgeted_set(c, 2, 1);
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  OracleOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const WorstCase a =
      brute_force_aro(c, set, det.investment, det.operations[0].w, one);
  const WorstCase b =
      brute_force_aro(c, set, det.investment, det.operations[0].w, many);
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
  CHECK(a.evaluated == count_extreme_points(set));
}

TEST_CASE("worst case raises load and lowers PV") {
  // Nonnegative prices: more demand and less PV never help.
  for (uint32_t seed = 60; seed < 64; ++seed) {
    const CaseData c = testing::random_case(seed, 3, 3, 1);
    const BudgetedSet set = budgeted_set(c, 1, 1);
    const PlanSolution det = solve_deterministic(c, nominal_profile(c));
    const WorstCase wc =
        brute_force_aro(c, set, det.investment, det.operations[0].w);
    // The mirrored pattern is never strictly better.
    ExtremePoint adverse = wc.point;
    for (int t = 0; t < c.horizon(); ++t) {
      adverse.u_minus[t] = std::max(wc.point.u_plus[t], wc.point.u_minus[t]);
      adverse.u_plus[t] = 0;
      for (int i = 0; i < c.network.num_buses(); ++i) {
        adverse.v_plus(t, i) =
            std::max(wc.point.v_plus(t, i), wc.point.v_minus(t, i));
        adverse.v_minus(t, i) = 0;
      }
    }
    FirstStage fs{det.investment, {det.operations[0].w}};
    const RecourseResult rr = solve_recourse(
        c, {with_realization(nominal_profile(c), realize(set, adverse))}, {1.0},
        fs);
    CHECK(rr.value >= wc.value - 1e-6 * (1 + wc.value));
  }
}

TEST_CASE("enumeration limit is enforced") {
  const CaseData c = testing::bundled_case("five_bus.json");
  const BudgetedSet set = budgeted_set(c, 10, 10);
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  CHECK_THROWS_AS(brute_force_aro(c, set, det.investment, det.operations[0].w),
                  CapacityError);
}

TEST_CASE("perfect information bounds every plan's realized cost") {
  const CaseData c = testing::toy_case();
  const PlanSolution pi = perfect_information_benchmark(c);
  CHECK(pi.profiles[0].horizon() == c.horizon() * c.num_scenarios());
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  const PlanSolution tsso = solve_tsso(c, scenario_set(c));
  for (const PlanSolution* s : {&det, &tsso}) {
    CHECK(pi.objective <= realized_cost(c, s->investment) + 1e-6);
  }
  CHECK(realized_cost(c, pi.investment) ==
        doctest::Approx(pi.objective).epsilon(1e-7));
}

TEST_CASE("achieved autonomy by hand") {
  OperationValues op;
  op.pg = Matrix(2, 2);
  op.pg(0, 0) = 30.0;
  op.pg(1, 0) = 10.0;
  OperatingProfile p;
  p.pl = Matrix(2, 2);
  p.pl(0, 1) = 50.0;
  p.pl(1, 1) = 30.0;
  CHECK(achieved_autonomy(op, p) == doctest::Approx(0.5));
}

TEST_CASE("autonomy curve: investment grows with the level") {
  const CaseData c = testing::toy_case();
  const OperatingProfile horizon = concatenated_profile(c);
  const std::vector<double> levels{0.0, 0.1, 0.2, 0.3, 0.5, 0.9, 1.0};
  const std::vector<AutonomyPoint> curve = autonomy_curve(c, horizon, levels);
  REQUIRE(curve.size() == levels.size());
  const PlanSolution pi = perfect_information_benchmark(c);
  REQUIRE(curve[0].feasible);
  CHECK(curve[0].objective >= pi.objective - 1e-6);
  double previous = -1.0;
  for (const AutonomyPoint& p : curve) {
    if (!p.feasible) continue;
    CHECK(p.investment_cost >= previous - 1e-6);
    CHECK(p.achieved >= p.level - 1e-6);
    previous = p.investment_cost;
  }
  // Nothing can serve night load without the grid: full autonomy fails.
  CHECK_FALSE(curve.back().feasible);
}

}  // namespace
}  // namespace derplan
