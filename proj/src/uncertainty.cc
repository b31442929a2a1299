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

#include "derplan/uncertainty.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace derplan {
namespace {

constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

// sum_{k <= budget} C(m, k) 2^k
uint64_t series_count(int m, int budget) {
  uint64_t total = 0;
  uint64_t binom = 1;  // C(m, k)
  for (int k = 0; k <= std::min(m, budget); ++k) {
    if (k > 0) {
      // C(m, k) = C(m, k-1) * (m - k + 1) / k, exact in integers.
      const uint64_t num = sat_mul(binom, m - k + 1);
      binom = num == kSaturated ? kSaturated : num / k;
    }
    uint64_t pow2 = k >= 64 ? kSaturated : (uint64_t{1} << k);
    total = sat_add(total, sat_mul(binom, pow2));
  }
  return total;
}

std::vector<int> deviating_slots(const std::vector<double>& hat) {
  std::vector<int> slots;
  for (int t = 0; t < static_cast<int>(hat.size()); ++t) {
    if (hat[t] > 0.0) slots.push_back(t);
  }
  return slots;
}

std::vector<double> column(const Matrix& m, int col) {
  std::vector<double> out(m.rows());
  for (int r = 0; r < m.rows(); ++r) out[r] = m(r, col);
  return out;
}

// Every {-1,0,1} vector over `slots` with at most `budget` nonzeros, ordered by
// number of deviations, then positions, then signs (+1 before -1).
std::vector<std::vector<int>> series_patterns(int horizon,
                                              const std::vector<int>& slots,
                                              int budget) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(slots.size());
  std::vector<int> chosen;
  for (int k = 0; k <= std::min(m, budget); ++k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      for (uint32_t signs = 0; signs < (1u << k); ++signs) {
        std::vector<int> pattern(horizon, 0);
        for (int a = 0; a < k; ++a) {
          pattern[slots[pick[a]]] = (signs >> a) & 1u ? -1 : 1;
        }
        out.push_back(std::move(pattern));
      }
      // Next k-combination in lexicographic order.
      int a = k - 1;
      while (a >= 0 && pick[a] == m - k + a) --a;
      if (a < 0) break;
      ++pick[a];
      for (int b = a + 1; b < k; ++b) pick[b] = pick[b - 1] + 1;
    }
  }
  return out;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(s);
}

}  // namespace

BudgetedSet budgeted_set(const CaseData& c, int beta_pl, int beta_pv) {
  const int T = c.horizon();
  if (beta_pl < 0 || beta_pv < 0 || beta_pl > T || beta_pv > T) {
    throw std::invalid_argument("budgets must lie in [0, " +
                                std::to_string(T) + "]");
  }
  const UncertaintyEnvelope& env = c.envelope;
  BudgetedSet set{env.pv_bar, env.pv_hat, env.pl_bar, env.pl_hat, beta_pv,
                  beta_pl};
  if (set.horizon() != T || static_cast<int>(set.pv_hat.size()) != T ||
      set.pl_bar.rows() != T || set.pl_hat.rows() != T ||
      set.pl_bar.cols() != c.network.num_buses() ||
      set.pl_hat.cols() != c.network.num_buses()) {
    throw std::invalid_argument("uncertainty envelope does not match the case");
  }
  return set;
}

bool contains(const BudgetedSet& set, const Realization& r, double tol) {
  const int T = set.horizon();
  const int B = set.num_buses();
  if (static_cast<int>(r.pv.size()) != T || r.pl.rows() != T ||
      r.pl.cols() != B) {
    return false;
  }
  auto used = [tol](double dev, double hat, double& budget) {
    if (hat <= 0.0) return std::abs(dev) <= tol;
    if (std::abs(dev) > hat + tol) return false;
    budget += std::abs(dev) / hat;
    return true;
  };
  double pv_budget = 0.0;
  for (int t = 0; t < T; ++t) {
    if (!used(r.pv[t] - set.pv_bar[t], set.pv_hat[t], pv_budget)) return false;
  }
  if (pv_budget > set.beta_pv + tol) return false;
  for (int i = 0; i < B; ++i) {
    double pl_budget = 0.0;
    for (int t = 0; t < T; ++t) {
      if (!used(r.pl(t, i) - set.pl_bar(t, i), set.pl_hat(t, i), pl_budget)) {
        return false;
      }
    }
    if (pl_budget > set.beta_pl + tol) return false;
  }
  return true;
}

ExtremePoint nominal_point(const BudgetedSet& set) {
  const int T = set.horizon();
  const int B = set.num_buses();
  return ExtremePoint{std::vector<int>(T, 0), std::vector<int>(T, 0),
                      Grid<int>(T, B, 0), Grid<int>(T, B, 0)};
}

void check_extreme_point(const BudgetedSet& set, const ExtremePoint& ep) {
  const int T = set.horizon();
  const int B = set.num_buses();
  if (static_cast<int>(ep.u_plus.size()) != T ||
      static_cast<int>(ep.u_minus.size()) != T || ep.v_plus.rows() != T ||
      ep.v_plus.cols() != B || ep.v_minus.rows() != T ||
      ep.v_minus.cols() != B) {
    throw std::invalid_argument("extreme point does not match the set shape");
  }
  auto bit = [](int x) { return x == 0 || x == 1; };
  int pv_used = 0;
  for (int t = 0; t < T; ++t) {
    if (!bit(ep.u_plus[t]) || !bit(ep.u_minus[t])) {
      throw std::invalid_argument("extreme point entries must be 0 or 1");
    }
    if (ep.u_plus[t] + ep.u_minus[t] > 1) {
      throw std::invalid_argument("U+ and U- both set at slot " +
                                  std::to_string(t));
    }
    pv_used += ep.u_plus[t] + ep.u_minus[t];
  }
  if (pv_used > set.beta_pv) {
    throw std::invalid_argument("PV deviations exceed the budget");
  }
  for (int i = 0; i < B; ++i) {
    int used = 0;
    for (int t = 0; t < T; ++t) {
      if (!bit(ep.v_plus(t, i)) || !bit(ep.v_minus(t, i))) {
        throw std::invalid_argument("extreme point entries must be 0 or 1");
      }
      if (ep.v_plus(t, i) + ep.v_minus(t, i) > 1) {
        throw std::invalid_argument("V+ and V- both set at slot " +
                                    std::to_string(t) + ", bus " +
                                    std::to_string(i));
      }
      used += ep.v_plus(t, i) + ep.v_minus(t, i);
    }
    if (used > set.beta_pl) {
      throw std::invalid_argument("load deviations exceed the budget at bus " +
                                  std::to_string(i));
    }
  }
}

Realization realize(const BudgetedSet& set, const ExtremePoint& ep) {
  check_extreme_point(set, ep);
  const int T = set.horizon();
  const int B = set.num_buses();
  Realization r{set.pv_bar, set.pl_bar};
  for (int t = 0; t < T; ++t) {
    r.pv[t] += set.pv_hat[t] * (ep.u_plus[t] - ep.u_minus[t]);
    for (int i = 0; i < B; ++i) {
      r.pl(t, i) += set.pl_hat(t, i) * (ep.v_plus(t, i) - ep.v_minus(t, i));
    }
  }
  return r;
}

std::vector<int> pattern_key(const ExtremePoint& ep) {
  std::vector<int> key = ep.u_plus;
  key.insert(key.end(), ep.u_minus.begin(), ep.u_minus.end());
  key.insert(key.end(), ep.v_plus.data().begin(), ep.v_plus.data().end());
  key.insert(key.end(), ep.v_minus.data().begin(), ep.v_minus.data().end());
  return key;
}

std::string digest(const ExtremePoint& ep) {
  uint64_t h = 1469598103934665603ull;
  for (int x : pattern_key(ep)) {
    h ^= static_cast<uint8_t>(x);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

uint64_t count_extreme_points(const BudgetedSet& set) {
  uint64_t total =
      series_count(static_cast<int>(deviating_slots(set.pv_hat).size()),
                   set.beta_pv);
  for (int i = 0; i < set.num_buses(); ++i) {
    total = sat_mul(total, series_count(static_cast<int>(deviating_slots(
                                            column(set.pl_hat, i))
                                                             .size()),
                                        set.beta_pl));
  }
  return total;
}

ExtremePointEnumerator::ExtremePointEnumerator(const BudgetedSet& set,
                                               uint64_t limit)
    : horizon_(set.horizon()),
      buses_(set.num_buses()),
      count_(count_extreme_points(set)) {
  if (count_ > limit) {
    throw CapacityError("budgeted set has " + std::to_string(count_) +
                            " extreme points, limit is " +
                            std::to_string(limit),
                        count_);
  }
  patterns_.push_back(
      series_patterns(horizon_, deviating_slots(set.pv_hat), set.beta_pv));
  for (int i = 0; i < buses_; ++i) {
    patterns_.push_back(series_patterns(
        horizon_, deviating_slots(column(set.pl_hat, i)), set.beta_pl));
  }
  reset();
}

void ExtremePointEnumerator::reset() {
  odometer_.assign(patterns_.size(), 0);
  done_ = false;
}

bool ExtremePointEnumerator::next(ExtremePoint& out) {
  if (done_) return false;
  out.u_plus.assign(horizon_, 0);
  out.u_minus.assign(horizon_, 0);
  out.v_plus = Grid<int>(horizon_, buses_, 0);
  out.v_minus = Grid<int>(horizon_, buses_, 0);
  const Pattern& pv = patterns_[0][odometer_[0]];
  for (int t = 0; t < horizon_; ++t) {
    out.u_plus[t] = pv[t] > 0;
    out.u_minus[t] = pv[t] < 0;
  }
  for (int i = 0; i < buses_; ++i) {
    const Pattern& pl = patterns_[1 + i][odometer_[1 + i]];
    for (int t = 0; t < horizon_; ++t) {
      out.v_plus(t, i) = pl[t] > 0;
      out.v_minus(t, i) = pl[t] < 0;
    }
  }
  // Advance, last series fastest.
  int s = static_cast<int>(odometer_.size()) - 1;
  while (s >= 0) {
    if (++odometer_[s] < patterns_[s].size()) break;
    odometer_[s] = 0;
    --s;
  }
  if (s < 0) done_ = true;
  return true;
}

std::vector<ExtremePoint> enumerate_extreme_points(const BudgetedSet& set,
                                                   uint64_t limit) {
  ExtremePointEnumerator it(set, limit);
  std::vector<ExtremePoint> out;
  out.reserve(it.count());
  ExtremePoint ep;
  while (it.next(ep)) out.push_back(ep);
  return out;
}

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("percentile of no samples");
  if (p < 0.0 || p > 100.0) {
    throw std::invalid_argument("percentile must lie in [0, 100]");
  }
  std::sort(samples.begin(), samples.end());
  const double rank = p / 100.0 * (samples.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(rank));
  const size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (rank - lo) * (samples[hi] - samples[lo]);
}

Envelope envelope_from_history(const Matrix& history, double p_low,
                               double p_high) {
  if (history.rows() == 0 || history.cols() == 0) {
    throw std::invalid_argument("empty history");
  }
  if (history.cols() < 2) {
    throw std::invalid_argument("history needs at least two samples");
  }
  if (!(0.0 <= p_low && p_low < p_high && p_high <= 100.0)) {
    throw std::invalid_argument("percentiles must satisfy 0 <= low < high <= 100");
  }
  Envelope env;
  for (int t = 0; t < history.rows(); ++t) {
    std::vector<double> row(history.cols());
    for (int k = 0; k < history.cols(); ++k) row[k] = history(t, k);
    const double bar = std::accumulate(row.begin(), row.end(), 0.0) / row.size();
    const double hi = percentile(row, p_high);
    const double lo = percentile(row, p_low);
    env.bar.push_back(bar);
    env.hat.push_back(std::max({hi - bar, bar - lo, 0.0}));
  }
  return env;
}

Envelope envelope_from_range(const Matrix& samples,
                             const std::vector<double>& weights) {
  if (samples.cols() == 0 || static_cast<int>(weights.size()) != samples.cols()) {
    throw std::invalid_argument("envelope_from_range: weights do not match");
  }
  Envelope env;
  for (int t = 0; t < samples.rows(); ++t) {
    double bar = 0.0, lo = samples(t, 0), hi = samples(t, 0);
    for (int k = 0; k < samples.cols(); ++k) {
      bar += weights[k] * samples(t, k);
      lo = std::min(lo, samples(t, k));
      hi = std::max(hi, samples(t, k));
    }
    env.bar.push_back(bar);
    env.hat.push_back(std::max({hi - bar, bar - lo, 0.0}));
  }
  return env;
}

ScenarioSet scenario_set(const CaseData& c) {
  ScenarioSet s;
  s.probabilities = c.probabilities;
  s.pv = c.pv_profile.pv;
  s.pl = c.loads.pl;
  s.ql = c.loads.ql;
  s.price = c.costs.price;
  s.source.resize(c.num_scenarios());
  std::iota(s.source.begin(), s.source.end(), 0);
  return s;
}

CaseData with_scenarios(CaseData c, const ScenarioSet& s) {
  c.probabilities = s.probabilities;
  c.pv_profile.pv = s.pv;
  c.loads.pl = s.pl;
  c.loads.ql = s.ql;
  c.costs.price = s.price;
  return c;
}

ScenarioSet reduce_scenarios(const std::vector<TrajectorySample>& samples,
                             int k, const std::vector<double>& probabilities) {
  const int n = static_cast<int>(samples.size());
  if (!probabilities.empty() && static_cast<int>(probabilities.size()) != n) {
    throw std::invalid_argument("reduce_scenarios: one probability per sample");
  }
  if (k < 1) throw std::invalid_argument("reduce_scenarios needs k >= 1");
  if (k > n) {
    throw std::invalid_argument("reduce_scenarios: k exceeds the sample count");
  }
  const int T = static_cast<int>(samples[0].pv.size());
  for (const TrajectorySample& s : samples) {
    if (static_cast<int>(s.pv.size()) != T || s.pl.rows() != T) {
      throw std::invalid_argument("samples must share one horizon");
    }
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      dist[a][b] = dist[b][a] = distance(samples[a].pv, samples[b].pv);
    }
  }
  std::vector<double> prob =
      probabilities.empty() ? std::vector<double>(n, 1.0 / n) : probabilities;
  std::vector<bool> alive(n, true);
  auto nearest = [&](int j) {
    int best = -1;
    for (int s = 0; s < n; ++s) {
      if (s == j || !alive[s]) continue;
      if (best < 0 || dist[j][s] < dist[j][best]) best = s;
    }
    return best;
  };
  for (int remaining = n; remaining > k; --remaining) {
    int drop = -1;
    double drop_cost = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      const double cost = prob[j] * dist[j][nearest(j)];
      if (drop < 0 || cost < drop_cost) {
        drop = j;
        drop_cost = cost;
      }
    }
    const int to = nearest(drop);
    alive[drop] = false;
    prob[to] += prob[drop];
    prob[drop] = 0.0;
  }

  ScenarioSet out;
  const int B = samples[0].pl.cols();
  out.pv = Matrix(T, k);
  out.price = Matrix(T, k);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    if (!alive[j]) continue;
    const TrajectorySample& s = samples[j];
    out.probabilities.push_back(prob[j]);
    out.source.push_back(j);
    for (int t = 0; t < T; ++t) {
      out.pv(t, col) = s.pv[t];
      out.price(t, col) = s.price.empty() ? 0.0 : s.price[t];
    }
    out.pl.push_back(s.pl);
    out.ql.push_back(s.ql.empty() ? Matrix(T, B) : s.ql);
    ++col;
  }
  return out;
}

CaseData reduce_case_scenarios(const CaseData& c, int k) {
  const ScenarioSet full = scenario_set(c);
  std::vector<TrajectorySample> samples;
  for (int s = 0; s < full.size(); ++s) {
    TrajectorySample t;
    for (int h = 0; h < full.pv.rows(); ++h) {
      t.pv.push_back(full.pv(h, s));
      t.price.push_back(full.price(h, s));
    }
    t.pl = full.pl[s];
    t.ql = full.ql[s];
    samples.push_back(std::move(t));
  }
  return with_scenarios(c, reduce_scenarios(samples, k, full.probabilities));
}

}  // namespace derplan
