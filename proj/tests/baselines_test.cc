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

#include <algorithm>

#include "derplan/baselines.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

TEST_CASE("TSSO objective is investment plus expected operation") {
  const CaseData c = testing::toy_case();
  const PlanSolution s = solve_tsso(c, scenario_set(c));
  REQUIRE(s.operations.size() == 2);
  double expected = 0.0;
  for (int k = 0; k < 2; ++k) {
    expected += c.probabilities[k] *
                operational_cost(c, s.operations[k], s.profiles[k]);
    CHECK(check_feasibility(c, s.investment, s.operations[k], s.profiles[k])
              .feasible(1e-6));
  }
  CHECK(s.operational_cost == doctest::Approx(expected));
  CHECK(s.objective ==
        doctest::Approx(investment_cost(c, s.investment) + expected)
            .epsilon(1e-9));
}

TEST_CASE("duplicated scenarios change nothing") {
  const CaseData c = testing::random_case(21, 4, 4, 1);
  const OperatingProfile p = scenario_profile(c, 0);
  const PlanSolution one = solve_tsso(c, {p}, {1.0});
  const PlanSolution two = solve_tsso(c, {p, p}, {0.5, 0.5});
  CHECK(two.objective == doctest::Approx(one.objective).epsilon(1e-7));
  const PlanSolution det = solve_deterministic(c, p);
  CHECK(one.objective == doctest::Approx(det.objective).epsilon(1e-7));
}

TEST_CASE("TSSO is bounded by the scenario-wise deterministic optima") {
  // Wait-and-see value <= TSSO value.
  for (uint32_t seed = 30; seed < 34; ++seed) {
    const CaseData c = testing::random_case(seed, 4, 4, 2);
    const PlanSolution tsso = solve_tsso(c, scenario_set(c));
    double wait_and_see = 0.0;
    for (int k = 0; k < 2; ++k) {
      wait_and_see += c.probabilities[k] *
                      solve_deterministic(c, scenario_profile(c, k)).objective;
    }
    CHECK(wait_and_see <= tsso.objective + 1e-6 * (1 + tsso.objective));
  }
}

TEST_CASE("SRO realization takes the costliest load slots per bus") {
  BudgetedSet set;
  set.pv_bar = {0.0, 0.6, 0.8, 0.2};
  set.pv_hat = {0.0, 0.2, 0.1, 0.1};
  set.pl_bar = Matrix(4, 2, 10.0);
  set.pl_hat = Matrix(4, 2);
  const double hat[4] = {1.0, 3.0, 2.0, 3.0};
  for (int t = 0; t < 4; ++t) set.pl_hat(t, 1) = hat[t];
  set.beta_pl = 2;
  set.beta_pv = 1;
  const std::vector<double> price{0.5, 0.1, 0.2, 0.1};
  // hat * price = 0.5, 0.3, 0.4, 0.3 -> slots 0 and 2.
  const Realization r = sro_realization(set, price, SroPvRule::kAllSlots,
                                        SroLoadRule::kTopHatPrice);
  CHECK(r.pl(0, 1) == 11.0);
  CHECK(r.pl(1, 1) == 10.0);
  CHECK(r.pl(2, 1) == 12.0);
  CHECK(r.pl(3, 1) == 10.0);
  CHECK(r.pl(0, 0) == 10.0);
  for (int t = 0; t < 4; ++t) {
    CHECK(r.pv[t] == doctest::Approx(set.pv_bar[t] - set.pv_hat[t]));
  }
  const Realization top = sro_realization(set, price, SroPvRule::kTopPvBar,
                                          SroLoadRule::kTopHatPrice);
  CHECK(top.pv[2] == doctest::Approx(0.7));
  CHECK(top.pv[1] == 0.6);

  // Ties go to the earlier slot: 0.3 at slots 1 and 3.
  set.beta_pl = 3;
  const Realization tie = sro_realization(set, price, SroPvRule::kAllSlots,
                                          SroLoadRule::kTopHatPrice);
  CHECK(tie.pl(1, 1) == 13.0);
  CHECK(tie.pl(3, 1) == 10.0);

  // Row-wise rule: every slot, whatever the budget beyond zero.
  set.beta_pl = 1;
  const Realization all = sro_realization(set, price, SroPvRule::kAllSlots);
  for (int t = 0; t < 4; ++t) CHECK(all.pl(t, 1) == 10.0 + hat[t]);
  set.beta_pl = 0;
  const Realization none = sro_realization(set, price, SroPvRule::kAllSlots);
  for (int t = 0; t < 4; ++t) CHECK(none.pl(t, 1) == 10.0);
}

TEST_CASE("SRO at zero budget is the deterministic model") {
  const CaseData c = testing::toy_case();
  const PlanSolution sro = solve_sro(c, budgeted_set(c, 0, 0));
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  CHECK(sro.objective == doctest::Approx(det.objective).epsilon(1e-9));
  CHECK(sro.formulation == "sro");
}

TEST_CASE("SRO cost grows with the budget on the toy case") {
  const CaseData c = testing::toy_case();
  double previous = 0.0;
  for (int beta = 0; beta <= c.horizon(); ++beta) {
    const PlanSolution s = solve_sro(c, budgeted_set(c, beta, beta));
    CHECK(s.objective >= previous - 1e-6);
    previous = s.objective;
    CHECK(check_feasibility(c, s.investment, s.operations[0], s.profiles[0])
              .feasible(1e-6));
  }
}

TEST_CASE("with_load swaps the active load and checks its shape") {
  const CaseData c = testing::toy_case();
  const auto profiles = scenario_profiles(scenario_set(c));
  const Matrix pl(4, 3, 7.0);
  for (const OperatingProfile& p : with_load(profiles, pl)) CHECK(p.pl == pl);
  CHECK_THROWS_AS(with_load(profiles, Matrix(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(solve_tsso(c, profiles, {1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace derplan
