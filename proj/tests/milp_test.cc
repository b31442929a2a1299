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
#include <random>

#include "derplan/milp.h"

namespace derplan {
namespace {

TEST_CASE("single-variable LP") {
  LinearModel m;
  const VarRef x = m.add_variable("x", 0.0, 10.0);
  m.add_constraint("c", LinearExpr().add(x, 1.0), RowSense::kGreaterEqual, 3.0);
  m.set_objective(LinearExpr().add(x, 2.0), ObjectiveSense::kMinimize);
  const SolveResult r = solve(m);
  REQUIRE(r.optimal());
  CHECK(r.objective == doctest::Approx(6.0));
  CHECK(r.value(x) == doctest::Approx(3.0));
}

TEST_CASE("binary knapsack") {
  LinearModel m;
  const double value[] = {10, 13, 7, 8};
  const double weight[] = {5, 7, 3, 4};
  LinearExpr obj, cap;
  std::vector<VarRef> x;
  for (int i = 0; i < 4; ++i) {
    x.push_back(m.add_binary("x" + std::to_string(i)));
    obj.add(x.back(), value[i]);
    cap.add(x.back(), weight[i]);
  }
  m.add_constraint("cap", cap, RowSense::kLessEqual, 12.0);
  m.set_objective(obj, ObjectiveSense::kMaximize);
  const SolveResult r = solve(m);
  REQUIRE(r.optimal());
  // Enumerate the 16 subsets.
  double best = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    double v = 0, w = 0;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) {
        v += value[i];
        w += weight[i];
      }
    }
    if (w <= 12.0) best = std::max(best, v);
  }
  CHECK(r.objective == doctest::Approx(best));
  CHECK(r.bound >= r.objective - 1e-9);
}

TEST_CASE("infeasible and unbounded statuses") {
  LinearModel a;
  const VarRef x = a.add_variable("x", 0.0, 1.0);
  a.add_constraint("c", LinearExpr().add(x, 1.0), RowSense::kGreaterEqual, 2.0);
  a.set_objective(LinearExpr().add(x, 1.0), ObjectiveSense::kMinimize);
  CHECK(solve(a).status == SolveStatus::kInfeasible);

  LinearModel b;
  const VarRef y = b.add_variable("y", 0.0, kInf);
  b.set_objective(LinearExpr().add(y, 1.0), ObjectiveSense::kMaximize);
  CHECK(solve(b).status == SolveStatus::kUnbounded);
}

TEST_CASE("constraint names are unique") {
  LinearModel m;
  const VarRef x = m.add_variable("x", 0.0, 1.0);
  m.add_constraint("c", LinearExpr().add(x, 1.0), RowSense::kLessEqual, 1.0);
  CHECK_THROWS_AS(m.add_constraint("c", LinearExpr().add(x, 1.0),
                                   RowSense::kLessEqual, 1.0),
                  std::invalid_argument);
  CHECK(m.find_constraint("c") == 0);
  CHECK(m.find_constraint("d") == -1);
}

TEST_CASE("expression constants move to the right-hand side") {
  LinearModel m;
  const VarRef x = m.add_variable("x", -kInf, kInf);
  m.add_constraint("c", LinearExpr(4.0).add(x, 1.0), RowSense::kEqual, 10.0);
  m.set_objective(LinearExpr().add(x, 1.0), ObjectiveSense::kMinimize);
  const SolveResult r = solve(m);
  REQUIRE(r.optimal());
  CHECK(r.value(x) == doctest::Approx(6.0));
}

TEST_CASE("fix_variables and max_violation") {
  LinearModel m;
  const VarRef x = m.add_variable("x", 0.0, 5.0);
  const VarRef y = m.add_variable("y", 0.0, 5.0);
  m.add_constraint("c", LinearExpr().add(x, 1.0).add(y, 1.0),
                   RowSense::kLessEqual, 4.0);
  m.set_objective(LinearExpr().add(x, -1.0).add(y, -2.0),
                  ObjectiveSense::kMinimize);
  const LinearModel fixed = fix_variables(m, {{y, 1.0}});
  const SolveResult r = solve(fixed);
  REQUIRE(r.optimal());
  CHECK(r.value(x) == doctest::Approx(3.0));
  const std::vector<double> bad = {4.0, 1.5};
  CHECK(max_violation(m, bad) == doctest::Approx(1.5));
}

TEST_CASE("row duals follow the documented sign convention") {
  // min x + y  s.t.  x + 2y >= 4 (binding),  x <= 3 (slack)
  LinearModel m;
  const VarRef x = m.add_variable("x", 0.0, kInf);
  const VarRef y = m.add_variable("y", 0.0, kInf);
  m.add_constraint("ge", LinearExpr().add(x, 1.0).add(y, 2.0),
                   RowSense::kGreaterEqual, 4.0);
  m.add_constraint("le", LinearExpr().add(x, 1.0), RowSense::kLessEqual, 3.0);
  m.set_objective(LinearExpr().add(x, 1.0).add(y, 1.0),
                  ObjectiveSense::kMinimize);
  const SolveResult r = solve(m);
  REQUIRE(r.optimal());
  REQUIRE(r.dual.size() == 2);
  // Optimum y = 2, value 2; raising the rhs by d raises the value by d/2.
  CHECK(r.dual[0] == doctest::Approx(0.5));
  CHECK(r.dual[1] == doctest::Approx(0.0));
}

// Random feasible LP in the mixed form the models use: >= 0 and free columns,
// all three row senses.
LinearModel random_lp(std::mt19937& rng, int n, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearModel lp;
  std::vector<VarRef> x;
  std::vector<double> x0;
  for (int j = 0; j < n; ++j) {
    const bool free = j % 3 == 2;
    x.push_back(lp.add_variable("x" + std::to_string(j), free ? -kInf : 0.0,
                                kInf));
    x0.push_back(free ? u(rng) : 0.5 + 0.5 * u(rng));
  }
  for (int i = 0; i < m; ++i) {
    LinearExpr e;
    double at = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = u(rng);
      e.add(x[j], a);
      at += a * x0[j];
    }
    const int kind = i % 3;
    if (kind == 0) lp.add_constraint("r" + std::to_string(i), e, RowSense::kLessEqual, at + 0.5);
    if (kind == 1) lp.add_constraint("r" + std::to_string(i), e, RowSense::kGreaterEqual, at - 0.5);
    if (kind == 2) lp.add_constraint("r" + std::to_string(i), e, RowSense::kEqual, at);
  }
  // Box rows keep the LP bounded.
  for (int j = 0; j < n; ++j) {
    lp.add_constraint("box_hi" + std::to_string(j), LinearExpr().add(x[j], 1.0),
                      RowSense::kLessEqual, 5.0);
    lp.add_constraint("box_lo" + std::to_string(j), LinearExpr().add(x[j], 1.0),
                      RowSense::kGreaterEqual, -5.0);
  }
  LinearExpr obj;
  for (int j = 0; j < n; ++j) obj.add(x[j], u(rng));
  lp.set_objective(obj, ObjectiveSense::kMinimize);
  return lp;
}

TEST_CASE("dualize: strong duality on random LPs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const LinearModel lp = random_lp(rng, 6, 5);
    const SolveResult primal = solve(lp);
    REQUIRE(primal.optimal());
    const LpDual d = dualize(lp);
    const SolveResult dual = solve(d.model);
    REQUIRE(dual.optimal());
    CHECK(dual.objective ==
          doctest::Approx(primal.objective).epsilon(1e-7));
    // The solver's own row duals are dual feasible with the same value.
    std::vector<double> y(d.model.num_variables(), 0.0);
    for (size_t r = 0; r < d.y.size(); ++r) y[d.y[r].index] = primal.dual[r];
    CHECK(max_violation(d.model, y) <= 1e-7);
  }
}

TEST_CASE("dualize: parameters fold into the right-hand side") {
  // min x  s.t. x >= 2 p,  p parameter (binary).
  LinearModel lp;
  const VarRef x = lp.add_variable("x", 0.0, kInf);
  const VarRef p = lp.add_binary("p");
  lp.add_constraint("c", LinearExpr().add(x, 1.0).add(p, -2.0),
                    RowSense::kGreaterEqual, 0.0);
  lp.set_objective(LinearExpr().add(x, 1.0).add(p, 3.0),
                   ObjectiveSense::kMinimize);
  CHECK_THROWS_AS(dualize(lp), std::invalid_argument);
  const LpDual d = dualize(lp, {{p, 1.0}});
  CHECK(d.dual_row[p.index] == -1);
  CHECK(d.rhs[0] == doctest::Approx(2.0));
  CHECK(d.constant == doctest::Approx(3.0));
  const SolveResult r = solve(d.model);
  REQUIRE(r.optimal());
  CHECK(r.objective == doctest::Approx(5.0));
  const std::vector<double> y = {r.value(d.y[0])};
  const auto grad = parameter_gradient(lp, {{p, 1.0}}, y);
  // d/dp of (3p + 2p * y) with y = 1.
  CHECK(grad.at(p) == doctest::Approx(5.0));
}

}  // namespace
}  // namespace derplan
