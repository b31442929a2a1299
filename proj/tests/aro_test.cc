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
#include <random>

#include "derplan/aro.h"
#include "derplan/baselines.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/dual_subproblem.h"
#include "derplan/oracle.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

bool close(double a, double b, double rel = 1e-6) {
  return std::abs(a - b) <= rel * (1.0 + std::abs(b));
}

FirstStage plan_of(const PlanSolution& s) {
  return FirstStage{s.investment, {s.operations[0].w}};
}

void check_sound(const CaseData& c, const BudgetedSet& set,
                 const RobustSolution& sol, double tol) {
  REQUIRE(sol.status == RobustStatus::kConverged);
  for (size_t k = 1; k < sol.trace.size(); ++k) {
    CHECK(sol.trace[k].lb >= sol.trace[k - 1].lb - 1e-9);
    CHECK(sol.trace[k].ub <= sol.trace[k - 1].ub + 1e-9);
  }
  CHECK(sol.ub - sol.lb <= tol * (1.0 + std::abs(sol.ub)));
  CHECK(static_cast<uint64_t>(sol.iterations()) <= count_extreme_points(set));
  REQUIRE(sol.master_operations.size() == sol.master_profiles.size());
  for (size_t k = 0; k < sol.master_operations.size(); ++k) {
    CHECK(check_feasibility(c, sol.master_investment, sol.master_operations[k],
                            sol.master_profiles[k])
              .feasible(1e-6));
  }
  for (const IterationRecord& r : sol.trace) {
    CHECK(r.big_m_residual <= 1e-6);
  }
  CHECK(sol.objective ==
        doctest::Approx(sol.investment_cost + sol.operational_cost)
            .epsilon(1e-9));
}

TEST_CASE("DSP optimum equals the best extreme point on a tiny instance") {
  for (uint32_t seed = 100; seed < 106; ++seed) {
    const CaseData c = testing::random_case(seed, 3, 3, 1);
    const BudgetedSet set = budgeted_set(c, 1, 1);
    const FirstStage fs = plan_of(solve_deterministic(c, nominal_profile(c)));
    const DualSubproblem dsp = build_dual_subproblem(
        c, set, {nominal_profile(c)}, {1.0}, fs, /*pv_uncertain=*/true);
    const DspResult res = solve_dual_subproblem(dsp, set);
    const WorstCase oracle = brute_force_aro(c, set, fs.inv, fs.w[0]);
    CHECK_MESSAGE(close(res.value, oracle.value), "seed " << seed);
    CHECK(res.big_m_residual <= 1e-6);
    // The realization reported is worth what the DSP says.
    const RecourseResult rr = solve_recourse(
        c, {with_realization(nominal_profile(c), res.realization)}, {1.0}, fs);
    CHECK(close(rr.value, res.value));
  }
}

TEST_CASE("fixed patterns close the duality gap") {
  const CaseData c = testing::toy_case();
  const BudgetedSet set = budgeted_set(c, 2, 2);
  const FirstStage fs = plan_of(solve_deterministic(c, nominal_profile(c)));
  const DualSubproblem dsp =
      build_dual_subproblem(c, set, {nominal_profile(c)}, {1.0}, fs, true);
  const std::vector<ExtremePoint> points = enumerate_extreme_points(set, 100000);
  std::mt19937 rng(5);
  for (int k = 0; k < 25; ++k) {
    const ExtremePoint& ep = points[rng() % points.size()];
    const SolveResult dual = solve(fix_pattern(dsp, ep));
    REQUIRE(dual.optimal());
    const RecourseResult primal = solve_recourse(
        c, {with_realization(nominal_profile(c), realize(set, ep))}, {1.0}, fs);
    CHECK(close(dual.objective, primal.value));
  }
}

TEST_CASE("zero budget collapses to the deterministic model") {
  const CaseData c = testing::toy_case();
  const RobustSolution aro = solve_aro(c, budgeted_set(c, 0, 0));
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  CHECK(aro.status == RobustStatus::kConverged);
  CHECK(aro.iterations() <= 2);
  CHECK(close(aro.objective, det.objective));
}

TEST_CASE("decomposition is sound and matches the enumeration oracle") {
  const CaseData c = testing::toy_case();
  for (int beta = 1; beta <= 2; ++beta) {
    const BudgetedSet set = budgeted_set(c, beta, beta);
    AroOptions opt;
    const RobustSolution sol = solve_aro(c, set, opt);
    check_sound(c, set, sol, opt.tol);
    // The reported worst case of the returned plan is the true one.
    const WorstCase wc = brute_force_aro(c, set, sol.investment, sol.w[0]);
    CHECK(close(sol.operational_cost, wc.value));
  }
}

TEST_CASE("dual cuts reach the same optimum") {
  const CaseData c = testing::toy_case();
  const BudgetedSet set = budgeted_set(c, 1, 1);
  AroOptions primal, dual;
  dual.cut_style = CutStyle::kDual;
  const RobustSolution a = solve_aro(c, set, primal);
  const RobustSolution b = solve_aro(c, set, dual);
  REQUIRE(b.status == RobustStatus::kConverged);
  CHECK(close(a.objective, b.objective));
}

TEST_CASE("objective is monotone in the budget and above the nominal") {
  const CaseData c = testing::random_case(77, 3, 4, 1);
  const double det = solve_deterministic(c, nominal_profile(c)).objective;
  double previous = det;
  for (int beta = 0; beta <= 3; ++beta) {
    const RobustSolution s = solve_aro(c, budgeted_set(c, beta, beta));
    REQUIRE(s.status == RobustStatus::kConverged);
    CHECK(s.objective >= previous - 1e-6 * (1 + previous));
    previous = s.objective;
  }
}

TEST_CASE("single-stage robust cost bounds ARO from above") {
  for (uint32_t seed : {81u, 82u, 83u}) {
    const CaseData c = testing::random_case(seed, 3, 4, 1);
    const double det = solve_deterministic(c, nominal_profile(c)).objective;
    for (int beta = 1; beta <= 2; ++beta) {
      const BudgetedSet set = budgeted_set(c, beta, beta);
      const RobustSolution aro = solve_aro(c, set);
      REQUIRE(aro.status == RobustStatus::kConverged);
      CHECK(det <= aro.objective + 1e-6 * (1 + det));
      CHECK(aro.objective <= solve_sro(c, set).objective + 1e-6 * (1 + det));
      // The in-set variant is only a lower bound.
      SroOptions in_set;
      in_set.load_rule = SroLoadRule::kTopHatPrice;
      in_set.pv_rule = SroPvRule::kTopPvBar;
      CHECK(solve_sro(c, set, in_set).objective <=
            aro.objective + 1e-6 * (1 + det));
    }
  }
}

TEST_CASE("battery never charges and discharges at once") {
  const CaseData c = testing::toy_case();
  const RobustSolution s = solve_aro(c, budgeted_set(c, 2, 2));
  for (const auto* ops : {&s.master_operations, &s.worst_operations}) {
    for (const OperationValues& op : *ops) {
      for (int t = 0; t < op.ch.rows(); ++t) {
        for (int i = 0; i < op.ch.cols(); ++i) {
          CHECK(std::min(op.ch(t, i), op.ds(t, i)) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("iteration limit and callbacks") {
  const CaseData c = testing::toy_case();
  AroOptions opt;
  opt.max_iter = 1;
  int calls = 0;
  opt.on_iteration = [&](const IterationRecord& r) {
    ++calls;
    CHECK(r.iter == 1);
    CHECK(r.u_star_digest.size() == 16);
  };
  const RobustSolution s = solve_aro(c, budgeted_set(c, 2, 2), opt);
  CHECK(calls == 1);
  CHECK(s.iterations() == 1);
  if (s.status != RobustStatus::kConverged) {
    CHECK(s.status == RobustStatus::kIterationLimit);
    CHECK(s.ub >= s.lb);
  }
  opt.max_iter = 0;
  CHECK_THROWS_AS(solve_aro(c, budgeted_set(c, 1, 1), opt),
                  std::invalid_argument);
}

TEST_CASE("status and style names") {
  CHECK(std::string(to_string(RobustStatus::kConverged)) == "converged");
  CHECK(std::string(to_string(RobustStatus::kRepeatedPoint)) ==
        "repeated_point");
  CHECK(std::string(to_string(CutStyle::kDual)) == "dual");
}

}  // namespace
}  // namespace derplan
