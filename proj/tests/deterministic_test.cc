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
#include <cmath>

#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/milp.h"
#include "test_cases.h"

namespace derplan {
namespace {

double max_simultaneous(const OperationValues& op) {
  double worst = 0.0;
  for (int t = 0; t < op.ch.rows(); ++t) {
    for (int i = 0; i < op.ch.cols(); ++i) {
      worst = std::max(worst, std::min(op.ch(t, i), op.ds(t, i)));
    }
  }
  return worst;
}

void check_plan_limits(const CaseData& c, const InvestmentValues& inv) {
  int pv_sites = 0, bt_sites = 0;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    const Bus& b = c.network.buses[i];
    const double pv = inv.gamma_pv[i], bt = inv.gamma_bt[i];
    if (pv > 1e-6) {
      ++pv_sites;
      CHECK(b.pv_allowed);
      CHECK(pv >= c.tech.pv_cap_min - 1e-6);
      CHECK(pv <= c.tech.pv_cap_max + 1e-6);
    }
    if (bt > 1e-6) {
      ++bt_sites;
      CHECK(b.bess_allowed);
      CHECK(bt >= c.tech.bt_cap_min - 1e-6);
      CHECK(bt <= c.tech.bt_cap_max + 1e-6);
    }
  }
  CHECK(pv_sites <= c.tech.n_pv_max);
  CHECK(bt_sites <= c.tech.n_bt_max);
}

TEST_CASE("objective splits into investment and operation") {
  const CaseData c = testing::toy_case();
  const OperatingProfile profile = nominal_profile(c);
  const PlanSolution s = solve_deterministic(c, profile);
  REQUIRE(s.operations.size() == 1);
  CHECK(s.investment_cost == doctest::Approx(investment_cost(c, s.investment)));
  CHECK(s.operational_cost ==
        doctest::Approx(operational_cost(c, s.operations[0], profile)));
  CHECK(s.objective ==
        doctest::Approx(s.investment_cost + s.operational_cost).epsilon(1e-9));
}

TEST_CASE("solutions satisfy every constraint family") {
  for (uint32_t seed = 1; seed <= 12; ++seed) {
    const CaseData c = testing::random_case(seed, 4, 4, 2);
    const OperatingProfile profile = nominal_profile(c);
    const PlanSolution s = solve_deterministic(c, profile);
    const ResidualReport r =
        check_feasibility(c, s.investment, s.operations[0], profile);
    CHECK_MESSAGE(r.feasible(1e-6), "seed " << seed);
    CHECK(max_simultaneous(s.operations[0]) <= 1e-6);
    check_plan_limits(c, s.investment);
    CHECK(s.objective == doctest::Approx(investment_cost(c, s.investment) +
                                         operational_cost(c, s.operations[0],
                                                          profile))
                             .epsilon(1e-7));
  }
}

TEST_CASE("lossless network: injections sum to zero") {
  const CaseData c = testing::random_case(5, 5, 4, 1);
  const OperatingProfile profile = nominal_profile(c);
  const PlanSolution s = solve_deterministic(c, profile);
  const Matrix dp = delta_p(s.operations[0], profile);
  for (int t = 0; t < dp.rows(); ++t) {
    double total = 0.0;
    for (int i = 0; i < dp.cols(); ++i) total += dp(t, i);
    CHECK(std::abs(total) <= 1e-6);
  }
}

TEST_CASE("prohibitive capital cost buys nothing and imports the load") {
  CaseData c = testing::toy_case();
  for (double& v : c.costs.i_pv) v = 1e6;
  for (double& v : c.costs.i_bt) v = 1e6;
  const OperatingProfile profile = nominal_profile(c);
  const PlanSolution s = solve_deterministic(c, profile);
  CHECK(s.investment.total_pv() == 0.0);
  CHECK(s.investment.total_bt() == 0.0);
  double expected = 0.0;
  for (int t = 0; t < profile.horizon(); ++t) {
    double load = 0.0;
    for (int i = 0; i < profile.pl.cols(); ++i) load += profile.pl(t, i);
    expected += profile.price[t] * load * c.tech.dt;
  }
  CHECK(s.objective == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("free PV is installed at its cap where allowed") {
  CaseData c = testing::toy_case();
  for (double& v : c.costs.c_pv) v = 0.0;
  for (double& v : c.costs.i_pv) v = 0.0;
  c.costs.oc_pv = 0.0;
  const PlanSolution s = solve_deterministic(c, nominal_profile(c));
  CHECK(s.investment.pv_sites() >= 1);
  check_plan_limits(c, s.investment);
}

TEST_CASE("re-solving operations at the chosen plan reproduces the cost") {
  const CaseData c = testing::random_case(9, 4, 4, 2);
  const OperatingProfile profile = nominal_profile(c);
  const PlanSolution s = solve_deterministic(c, profile);
  const PlanSolution e = evaluate_plan(c, s.investment, profile);
  CHECK(e.operational_cost ==
        doctest::Approx(s.operational_cost).epsilon(1e-7));
  CHECK(e.investment_cost == doctest::Approx(s.investment_cost));
}

TEST_CASE("realization overload matches the profile build") {
  const CaseData c = testing::toy_case();
  const OperatingProfile nominal = nominal_profile(c);
  Realization r{nominal.pv, nominal.pl};
  const SolveResult a = solve(build_deterministic(c, r).model);
  const SolveResult b = solve(build_deterministic(c, nominal).model);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
}

TEST_CASE("feasibility check flags a broken balance") {
  const CaseData c = testing::toy_case();
  const OperatingProfile profile = nominal_profile(c);
  PlanSolution s = solve_deterministic(c, profile);
  CHECK(check_feasibility(c, s.investment, s.operations[0], profile)
            .feasible(1e-6));
  s.operations[0].pg(1, 0) += 5.0;
  const ResidualReport r =
      check_feasibility(c, s.investment, s.operations[0], profile);
  CHECK_FALSE(r.feasible(1e-6));
  CHECK(r.worst() == doctest::Approx(5.0));
  CHECK_FALSE(r.violated(1e-6).empty());
}

TEST_CASE("an unservable profile is reported as a solver error") {
  CaseData c = testing::toy_case();
  c.network.buses[0].pg_max = 1.0;
  CHECK_THROWS_AS(evaluate_plan(c, InvestmentValues{{0, 0, 0}, {0, 0, 0},
                                                    {0, 0, 0}, {0, 0, 0}},
                                nominal_profile(c)),
                  SolverError);
}

}  // namespace
}  // namespace derplan
