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
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "derplan/core_model.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

// Set over `buses` buses where only the listed series deviate.
BudgetedSet make_set(int slots, int buses, bool pv, std::vector<int> load_buses,
                     int beta_pv, int beta_pl) {
  BudgetedSet s;
  s.pv_bar.assign(slots, 0.5);
  s.pv_hat.assign(slots, pv ? 0.2 : 0.0);
  s.pl_bar = Matrix(slots, buses, 10.0);
  s.pl_hat = Matrix(slots, buses);
  for (int i : load_buses) {
    for (int t = 0; t < slots; ++t) s.pl_hat(t, i) = 1.0 + t;
  }
  s.beta_pv = beta_pv;
  s.beta_pl = beta_pl;
  return s;
}

// Patterns in {-1, 0, 1}^slots with at most `budget` nonzeros, by brute force.
uint64_t brute_count(int slots, int budget) {
  uint64_t n = 0;
  int total = 1;
  for (int t = 0; t < slots; ++t) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code, nonzero = 0;
    for (int t = 0; t < slots; ++t, c /= 3) nonzero += (c % 3) != 0;
    n += nonzero <= budget;
  }
  return n;
}

TEST_CASE("extreme point counts") {
  CHECK(count_extreme_points(make_set(3, 1, true, {}, 0, 0)) == 1);
  CHECK(count_extreme_points(make_set(3, 1, true, {}, 2, 0)) == 19);
  CHECK(brute_count(3, 2) == 19);
  // PV and one load series, T=2, budget 1 each.
  CHECK(count_extreme_points(make_set(2, 2, true, {1}, 1, 1)) ==
        brute_count(2, 1) * brute_count(2, 1));
  CHECK(brute_count(2, 1) == 5);
  for (int slots = 1; slots <= 6; ++slots) {
    for (int b = 0; b <= slots; ++b) {
      CHECK(count_extreme_points(make_set(slots, 1, true, {}, b, 0)) ==
            brute_count(slots, b));
    }
  }
}

TEST_CASE("a budget of five on 24 slots moves at most five slots") {
  const BudgetedSet set = make_set(24, 1, true, {}, 5, 0);
  std::mt19937 rng(3);
  ExtremePoint ep = nominal_point(set);
  std::vector<int> slots(24);
  for (int t = 0; t < 24; ++t) slots[t] = t;
  std::shuffle(slots.begin(), slots.end(), rng);
  for (int k = 0; k < 5; ++k) (k % 2 ? ep.u_plus : ep.u_minus)[slots[k]] = 1;
  CHECK_NOTHROW(check_extreme_point(set, ep));
  const Realization r = realize(set, ep);
  int moved = 0;
  for (int t = 0; t < 24; ++t) moved += r.pv[t] != set.pv_bar[t];
  CHECK(moved == 5);
  ep.u_plus[slots[5]] = 1;
  CHECK_THROWS_AS(check_extreme_point(set, ep), std::invalid_argument);
}

TEST_CASE("enumeration is exhaustive, distinct and inside the set") {
  const BudgetedSet set = make_set(3, 3, true, {1, 2}, 1, 2);
  const std::vector<ExtremePoint> points = enumerate_extreme_points(set, 100000);
  CHECK(points.size() == count_extreme_points(set));
  std::set<std::vector<int>> keys;
  for (const ExtremePoint& ep : points) {
    CHECK_NOTHROW(check_extreme_point(set, ep));
    CHECK(contains(set, realize(set, ep)));
    keys.insert(pattern_key(ep));
  }
  CHECK(keys.size() == points.size());

  ExtremePointEnumerator e(set, 100000);
  ExtremePoint first, again;
  REQUIRE(e.next(first));
  while (e.next(again)) {
  }
  e.reset();
  REQUIRE(e.next(again));
  CHECK(again == first);
}

TEST_CASE("zero budgets give only the nominal point") {
  const BudgetedSet set = make_set(4, 2, true, {1}, 0, 0);
  const std::vector<ExtremePoint> points = enumerate_extreme_points(set, 10);
  REQUIRE(points.size() == 1);
  const Realization r = realize(set, points[0]);
  CHECK(r.pv == set.pv_bar);
  CHECK(r.pl == set.pl_bar);
}

TEST_CASE("enumeration above the limit raises with the exact count") {
  const BudgetedSet set = make_set(10, 1, true, {}, 10, 0);
  try {
    ExtremePointEnumerator e(set, 1000);
    FAIL("expected CapacityError");
  } catch (const CapacityError& err) {
    CHECK(err.count() == 59049);
  }
}

TEST_CASE("deviations on idle entries leave the set") {
  const BudgetedSet set = make_set(2, 2, false, {1}, 0, 1);
  Realization r{set.pv_bar, set.pl_bar};
  CHECK(contains(set, r));
  r.pv[0] += 0.01;  // PV hat is zero
  CHECK_FALSE(contains(set, r));
  r = Realization{set.pv_bar, set.pl_bar};
  r.pl(0, 1) += 1.0;
  CHECK(contains(set, r));
  r.pl(1, 1) += 2.0;  // second slot of a budget-one bus
  CHECK_FALSE(contains(set, r));
}

TEST_CASE("budgets outside [0, T] are rejected") {
  const CaseData c = testing::toy_case();
  CHECK_NOTHROW(budgeted_set(c, 4, 4));
  CHECK_THROWS_AS(budgeted_set(c, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(budgeted_set(c, 0, -1), std::invalid_argument);
}

TEST_CASE("digests separate patterns") {
  const BudgetedSet set = make_set(3, 2, true, {1}, 1, 1);
  std::set<std::string> digests;
  for (const ExtremePoint& ep : enumerate_extreme_points(set, 1000)) {
    const std::string d = digest(ep);
    CHECK(d.size() == 16);
    digests.insert(d);
  }
  CHECK(digests.size() == count_extreme_points(set));
}

TEST_CASE("percentile interpolates between order statistics") {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  CHECK(percentile(v, 0) == 1.0);
  CHECK(percentile(v, 100) == 4.0);
  CHECK(percentile(v, 50) == doctest::Approx(2.5));
  CHECK(percentile(v, 25) == doctest::Approx(1.75));
  CHECK(percentile({7.0}, 30) == 7.0);
}

TEST_CASE("history envelope: mean and the wider percentile gap") {
  // One slot, samples 0..10: mean 5, p10 = 1, p80 = 8.
  Matrix h(1, 11);
  for (int s = 0; s <= 10; ++s) h(0, s) = s;
  const Envelope e = envelope_from_history(h, 10, 80);
  CHECK(e.bar[0] == doctest::Approx(5.0));
  CHECK(e.hat[0] == doctest::Approx(4.0));
}

TEST_CASE("range envelope: weighted mean and farthest sample") {
  Matrix m(1, 3);
  m(0, 0) = 0.0;
  m(0, 1) = 1.0;
  m(0, 2) = 4.0;
  const Envelope e = envelope_from_range(m, {0.5, 0.25, 0.25});
  CHECK(e.bar[0] == doctest::Approx(1.25));
  CHECK(e.hat[0] == doctest::Approx(2.75));
}

std::vector<TrajectorySample> samples_from(
    const std::vector<std::vector<double>>& pv) {
  std::vector<TrajectorySample> out;
  for (const auto& p : pv) {
    TrajectorySample s;
    s.pv = p;
    s.pl = Matrix(static_cast<int>(p.size()), 2, static_cast<double>(out.size()));
    out.push_back(s);
  }
  return out;
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(s);
}

TEST_CASE("reduction to n scenarios is the identity") {
  const auto samples =
      samples_from({{0.1, 0.5}, {0.2, 0.4}, {0.0, 0.9}, {0.3, 0.3}});
  const ScenarioSet s = reduce_scenarios(samples, 4);
  CHECK(s.source == std::vector<int>{0, 1, 2, 3});
  for (double p : s.probabilities) CHECK(p == doctest::Approx(0.25));
  for (int k = 0; k < 4; ++k) {
    CHECK(s.pv(1, k) == samples[k].pv[1]);
    CHECK(s.pl[k] == samples[k].pl);
  }
}

TEST_CASE("reduction to two matches the best subset by exhaustive search") {
  const std::vector<std::vector<double>> pv{
      {0.00, 0.10, 0.20}, {0.05, 0.15, 0.20}, {0.30, 0.35, 0.10},
      {0.80, 0.70, 0.60}, {0.90, 0.85, 0.60}};
  const std::vector<double> prob{0.15, 0.25, 0.1, 0.2, 0.3};
  const ScenarioSet s = reduce_scenarios(samples_from(pv), 2, prob);

  // Oracle: the kept pair minimizing sum over dropped p_i * d(i, nearest kept),
  // each dropped probability moved to its nearest kept sample.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_keep;
  std::vector<double> best_prob;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      double cost = 0.0;
      std::vector<double> moved{prob[a], prob[b]};
      for (int i = 0; i < 5; ++i) {
        if (i == a || i == b) continue;
        const double da = euclid(pv[i], pv[a]), db = euclid(pv[i], pv[b]);
        cost += prob[i] * std::min(da, db);
        moved[da <= db ? 0 : 1] += prob[i];
      }
      if (cost < best - 1e-12) {
        best = cost;
        best_keep = {a, b};
        best_prob = moved;
      }
    }
  }
  CHECK(s.source == best_keep);
  REQUIRE(s.probabilities.size() == 2);
  CHECK(s.probabilities[0] == doctest::Approx(best_prob[0]));
  CHECK(s.probabilities[1] == doctest::Approx(best_prob[1]));
}

TEST_CASE("reduction keeps probabilities summing to one") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pv(12, std::vector<double>(6));
  for (auto& p : pv) {
    for (double& v : p) v = u(rng);
  }
  for (int k = 1; k <= 12; ++k) {
    const ScenarioSet s = reduce_scenarios(samples_from(pv), k);
    CHECK(s.size() == k);
    double total = 0.0;
    for (double p : s.probabilities) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(reduce_scenarios(samples_from(pv), 0), std::invalid_argument);
  CHECK_THROWS_AS(reduce_scenarios(samples_from(pv), 13),
                  std::invalid_argument);
}

TEST_CASE("case scenarios can be reduced in place") {
  const CaseData c = testing::bundled_case("five_bus.json");
  const CaseData r = reduce_case_scenarios(c, 3);
  CHECK(r.num_scenarios() == 3);
  CHECK(validate_case(r).ok());
  CHECK(r.envelope.pv_bar == c.envelope.pv_bar);
}

}  // namespace
}  // namespace derplan
