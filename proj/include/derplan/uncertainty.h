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

// Budgeted uncertainty sets, their extreme points, and the scenario tools
// used to build inputs from history.

#ifndef DERPLAN_UNCERTAINTY_H_
#define DERPLAN_UNCERTAINTY_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "derplan/core_model.h"

namespace derplan {

// Raised when an enumeration would exceed its limit; carries the exact size
// (saturated at UINT64_MAX).
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, uint64_t count)
      : std::runtime_error(what), count_(count) {}
  uint64_t count() const { return count_; }

 private:
  uint64_t count_;
};

// PV deviates jointly for all buses under one budget; each bus has its own
// load budget.
struct BudgetedSet {
  std::vector<double> pv_bar, pv_hat;  // per slot
  Matrix pl_bar, pl_hat;               // slots x buses
  int beta_pv = 0;
  int beta_pl = 0;

  int horizon() const { return static_cast<int>(pv_bar.size()); }
  int num_buses() const { return pl_bar.cols(); }
};

// Set around the case envelope. Throws std::invalid_argument when a budget
// is negative or exceeds the horizon.
BudgetedSet budgeted_set(const CaseData& c, int beta_pl, int beta_pv);

// Membership in the set; deviations on zero-hat entries must vanish.
bool contains(const BudgetedSet& set, const Realization& r, double tol = 1e-9);

struct ExtremePoint {
  std::vector<int> u_plus, u_minus;  // per slot
  Grid<int> v_plus, v_minus;         // slots x buses

  friend bool operator==(const ExtremePoint&, const ExtremePoint&) = default;
};

ExtremePoint nominal_point(const BudgetedSet& set);

// Throws std::invalid_argument unless `ep` respects exclusivity and budgets.
void check_extreme_point(const BudgetedSet& set, const ExtremePoint& ep);

Realization realize(const BudgetedSet& set, const ExtremePoint& ep);

// Flattened (U+, U-, V+, V-) used for deterministic tie-breaking.
std::vector<int> pattern_key(const ExtremePoint& ep);

// FNV-1a digest of the pattern, as 16 hex digits.
std::string digest(const ExtremePoint& ep);

// Number of extreme points; a series with m deviating slots and budget b
// contributes sum_{k <= b} C(m, k) 2^k, series multiply. Saturates.
uint64_t count_extreme_points(const BudgetedSet& set);

// Restartable, deterministic walk over every extreme point.
class ExtremePointEnumerator {
 public:
  // Throws CapacityError when the count exceeds `limit`.
  ExtremePointEnumerator(const BudgetedSet& set, uint64_t limit);

  // Writes the next point and returns true, or returns false when done.
  bool next(ExtremePoint& out);
  void reset();
  uint64_t count() const { return count_; }

 private:
  using Pattern = std::vector<int>;  // -1, 0, +1 per slot

  int horizon_ = 0;
  int buses_ = 0;
  uint64_t count_ = 0;
  // series 0 is PV, series 1 + i is the load at bus i
  std::vector<std::vector<Pattern>> patterns_;
  std::vector<size_t> odometer_;
  bool done_ = false;
};

std::vector<ExtremePoint> enumerate_extreme_points(const BudgetedSet& set,
                                                   uint64_t limit);

// Percentile by linear interpolation between order statistics, with rank
// p/100 * (n - 1).
double percentile(std::vector<double> samples, double p);

struct Envelope {
  std::vector<double> bar, hat;
};

// Rows are slots, columns samples. bar = sample mean, hat = largest distance
// from the mean to either percentile (never negative).
Envelope envelope_from_history(const Matrix& history, double p_low,
                               double p_high);

// Weighted mean and the largest deviation to the extreme sample per row.
Envelope envelope_from_range(const Matrix& samples,
                             const std::vector<double>& weights);

struct ScenarioSet {
  std::vector<double> probabilities;
  Matrix pv;                  // slots x scenarios
  std::vector<Matrix> pl;     // per scenario, slots x buses
  std::vector<Matrix> ql;     // per scenario, slots x buses
  Matrix price;               // slots x scenarios
  std::vector<int> source;    // index of the sample each scenario came from

  int size() const { return static_cast<int>(probabilities.size()); }
};

ScenarioSet scenario_set(const CaseData& c);
// Copy of the case whose scenario data is replaced by `s`.
CaseData with_scenarios(CaseData c, const ScenarioSet& s);

// One historical day: PV trajectory and the loads paired with it. Empty ql or
// price are filled with zeros.
struct TrajectorySample {
  std::vector<double> pv;
  Matrix pl;
  Matrix ql;
  std::vector<double> price;
};

// Backward reduction down to k scenarios using the Euclidean distance between
// PV trajectories. Samples are equiprobable unless `probabilities` is given.
ScenarioSet reduce_scenarios(const std::vector<TrajectorySample>& samples,
                             int k,
                             const std::vector<double>& probabilities = {});

// The case with its own scenarios reduced to k. The uncertainty envelope is
// kept as loaded.
CaseData reduce_case_scenarios(const CaseData& c, int k);

}  // namespace derplan

#endif  // DERPLAN_UNCERTAINTY_H_
