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

// End-to-end checks on the bundled case and on small random instances. Each
// check prints one PASS or FAIL line; the exit status is the number of
// failures. Progress notes go to stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "derplan/aro.h"
#include "derplan/arso.h"
#include "derplan/baselines.h"
#include "derplan/case_io.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/dual_subproblem.h"
#include "derplan/oracle.h"
#include "derplan/reports.h"
#include "derplan/study.h"
#include "derplan/uncertainty.h"
#include "test_cases.h"

namespace derplan {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / (1.0 + std::abs(b));
}

void note(const char* fmt, const std::string& s) {
  std::fprintf(stderr, fmt, s.c_str());
  std::fflush(stderr);
}

class Report {
 public:
  void record(int id, const std::string& name, bool pass,
              const std::string& detail) {
    std::printf("%s  %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    failures_ += pass ? 0 : 1;
  }

  // Runs `check`, turning an exception into a failure line.
  void run(int id, const std::string& name,
           const std::function<bool(std::string&)>& check) {
    note("-- %s\n", name);
    std::string detail;
    bool pass = false;
    try {
      pass = check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    record(id, name, pass, detail);
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

FirstStage first_stage_of(const PlanSolution& s) {
  FirstStage fs{s.investment, {}};
  for (const OperationValues& op : s.operations) fs.w.push_back(op.w);
  return fs;
}

std::vector<OperatingProfile> nominal_load_scenarios(const CaseData& c) {
  return with_load(scenario_profiles(scenario_set(c)), c.envelope.pl_bar);
}

// Options matching the command line defaults.
StudyOptions default_options() {
  StudyOptions o;
  o.params.mip_gap = 1e-7;
  return o;
}

double max_simultaneous(const OperationValues& op) {
  double worst = 0.0;
  for (int t = 0; t < op.ch.rows(); ++t) {
    for (int i = 0; i < op.ch.cols(); ++i) {
      worst = std::max(worst, std::min(op.ch(t, i), op.ds(t, i)));
    }
  }
  return worst;
}

// Random pattern using every budget with a random number of deviations.
ExtremePoint random_pattern(const BudgetedSet& set, std::mt19937& rng) {
  ExtremePoint ep = nominal_point(set);
  const int T = set.horizon();
  auto pick = [&](const std::vector<int>& slots, int budget,
                  const std::function<void(int, int)>& set_sign) {
    std::vector<int> order = slots;
    std::shuffle(order.begin(), order.end(), rng);
    const int n = std::min<int>(budget, static_cast<int>(order.size()));
    const int k = n == 0 ? 0 : static_cast<int>(rng() % (n + 1));
    for (int j = 0; j < k; ++j) set_sign(order[j], rng() % 2 ? 1 : -1);
  };
  std::vector<int> pv_slots;
  for (int t = 0; t < T; ++t) {
    if (set.pv_hat[t] > 0.0) pv_slots.push_back(t);
  }
  pick(pv_slots, set.beta_pv, [&](int t, int s) {
    (s > 0 ? ep.u_plus : ep.u_minus)[t] = 1;
  });
  for (int i = 0; i < set.num_buses(); ++i) {
    std::vector<int> slots;
    for (int t = 0; t < T; ++t) {
      if (set.pl_hat(t, i) > 0.0) slots.push_back(t);
    }
    pick(slots, set.beta_pl, [&](int t, int s) {
      (s > 0 ? ep.v_plus : ep.v_minus)(t, i) = 1;
    });
  }
  return ep;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------

bool check_collapse(const CaseData& c, std::string& detail) {
  const auto start = Clock::now();
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  const RobustSolution aro = solve_aro(c, budgeted_set(c, 0, 0));
  const PlanSolution tsso =
      solve_tsso(c, nominal_load_scenarios(c), c.probabilities);
  const RobustSolution arso = solve_arso(c, budgeted_set(c, 0, 0));
  const double elapsed = seconds_since(start);
  const double d1 = rel_diff(aro.objective, det.objective);
  const double d2 = rel_diff(arso.objective, tsso.objective);
  detail = fmt("aro-det %.2e, arso-tsso %.2e, %.1f s", d1, d2, elapsed);
  return d1 <= 1e-6 && d2 <= 1e-6 && elapsed < 30.0;
}

bool check_oracle(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937 rng(2026);
  double worst = 0.0;
  int instances = 0, dsp_solves = 0;
  double max_residual = 0.0;
  uint32_t seed = 1000;
  while (instances < 20) {
    const int buses = 2 + static_cast<int>(rng() % 3);  // 2..4
    const int slots = 2 + static_cast<int>(rng() % 3);  // 2..4
    const int scenarios = 1 + static_cast<int>(rng() % 2);
    const int beta_pl = static_cast<int>(rng() % 3);
    const int beta_pv = static_cast<int>(rng() % 3);
    const CaseData c = testing::random_case(++seed, buses, slots, scenarios);
    const BudgetedSet set = budgeted_set(c, beta_pl, beta_pv);
    BudgetedSet load_only = set;
    load_only.beta_pv = 0;
    // Keep each enumeration small enough for a desk run.
    if (count_extreme_points(set) > 2000) continue;
    ++instances;

    const PlanSolution det = solve_deterministic(c, nominal_profile(c));
    const FirstStage fs_aro = first_stage_of(det);
    const DspResult aro = solve_dual_subproblem(
        build_dual_subproblem(c, set, {nominal_profile(c)}, {1.0}, fs_aro,
                              true),
        set);
    const WorstCase aro_bf =
        brute_force_aro(c, set, fs_aro.inv, fs_aro.w.front());
    worst = std::max(worst, rel_diff(aro.value, aro_bf.value));

    const auto blocks = nominal_load_scenarios(c);
    const PlanSolution tsso = solve_tsso(c, blocks, c.probabilities);
    const FirstStage fs_arso = first_stage_of(tsso);
    const DspResult arso = solve_dual_subproblem(
        build_dual_subproblem(c, set, blocks, c.probabilities, fs_arso, false),
        set);
    const WorstCase arso_bf = brute_force_arso(c, set, fs_arso.inv, fs_arso.w);
    worst = std::max(worst, rel_diff(arso.value, arso_bf.value));
    max_residual = std::max({max_residual, aro.big_m_residual,
                             arso.big_m_residual});
    dsp_solves += 2;
  }
  const double elapsed = seconds_since(start);
  detail = std::to_string(instances) +
           fmt(" instances, max rel diff %.2e, %.1f s", worst, elapsed);
  return worst <= 1e-6 && max_residual <= 1e-6 && elapsed < 300.0 &&
         dsp_solves == 40;
}

bool check_strong_duality(const CaseData& c, std::string& detail) {
  const BudgetedSet set = budgeted_set(c, 10, 10);
  const PlanSolution det = solve_deterministic(c, nominal_profile(c));
  const FirstStage fs = first_stage_of(det);
  const DualSubproblem dsp =
      build_dual_subproblem(c, set, {nominal_profile(c)}, {1.0}, fs, true);
  std::mt19937 rng(7);
  double worst = 0.0, worst_abs = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ExtremePoint ep = random_pattern(set, rng);
    check_extreme_point(set, ep);
    const SolveResult dual = solve(fix_pattern(dsp, ep));
    require_optimal(dual, "fixed-pattern DSP");
    const RecourseResult primal = solve_recourse(
        c, {with_realization(nominal_profile(c), realize(set, ep))}, {1.0}, fs);
    worst = std::max(worst, rel_diff(dual.objective, primal.value));
    worst_abs = std::max(worst_abs, std::abs(dual.objective - primal.value));
  }
  detail = fmt("50 patterns, max rel diff %.2e (abs %.2e)", worst, worst_abs);
  return worst <= 1e-6;
}

struct SweepData {
  std::vector<int> betas{0, 10, 20};
  std::vector<StudyResult> results;
  double seconds = 0.0;

  const StudyResult& find(const std::string& f, int beta) const {
    for (const StudyResult& r : results) {
      if (r.row.formulation != f) continue;
      if (f == "det" || f == "tsso" || r.row.beta_pl == beta) return r;
    }
    throw std::runtime_error("no sweep row for " + f);
  }
};

bool check_benders(const CaseData& c, const SweepData& sw,
                   std::string& detail) {
  const double tol = default_options().benders.tol;
  int runs = 0, bad = 0, max_iter = 0;
  double worst_residual = 0.0;
  for (const StudyResult& r : sw.results) {
    if (!r.robust) continue;
    const RobustSolution& s = *r.robust;
    ++runs;
    bool ok = s.status == RobustStatus::kConverged;
    for (size_t k = 1; k < s.trace.size(); ++k) {
      ok = ok && s.trace[k].lb >= s.trace[k - 1].lb - 1e-9;
    }
    ok = ok && s.ub - s.lb <= tol * (1.0 + std::abs(s.ub));
    const BudgetedSet set = budgeted_set(c, r.row.beta_pl,
                                         s.formulation == "arso" ? 0
                                                                 : r.row.beta_pl);
    ok = ok && static_cast<uint64_t>(s.iterations()) <= count_extreme_points(set);
    for (size_t k = 0; k < s.master_operations.size(); ++k) {
      const double res =
          check_feasibility(c, s.master_investment, s.master_operations[k],
                            s.master_profiles[k])
              .worst();
      worst_residual = std::max(worst_residual, res);
      ok = ok && res <= 1e-6;
    }
    max_iter = std::max(max_iter, s.iterations());
    if (!ok) {
      ++bad;
      note("   unsound run: %s\n", r.row.formulation + " beta " +
                                      std::to_string(r.row.beta_pl));
    }
  }
  detail = std::to_string(runs) + " runs, " + std::to_string(bad) +
           " unsound, max iterations " + std::to_string(max_iter) +
           fmt(", max MP residual %.1e", worst_residual);
  return runs > 0 && bad == 0;
}

bool check_ordering(const SweepData& sw, std::string& detail) {
  const double eps = 1e-6;
  auto le = [&](double a, double b) { return a <= b + eps * (1.0 + std::abs(b)); };
  const double det = sw.find("det", 0).row.objective;
  std::vector<std::string> broken;
  double prev_aro = -1e300, prev_sro = -1e300, prev_arso = -1e300;
  for (int beta : sw.betas) {
    const double aro = sw.find("aro", beta).row.objective;
    const double sro = sw.find("sro", beta).row.objective;
    const double arso = sw.find("arso", beta).row.objective;
    const std::string b = " at beta " + std::to_string(beta);
    if (!le(det, aro)) broken.push_back("det > aro" + b);
    if (!le(aro, sro)) broken.push_back("aro > sro" + b);
    if ((beta == 10 || beta == 20) && !le(arso, aro)) {
      broken.push_back("arso > aro" + b);
    }
    if (!le(prev_aro, aro)) broken.push_back("aro decreases" + b);
    if (!le(prev_sro, sro)) broken.push_back("sro decreases" + b);
    if (!le(prev_arso, arso)) broken.push_back("arso decreases" + b);
    prev_aro = aro;
    prev_sro = sro;
    prev_arso = arso;
  }
  detail = fmt("aro %.2f/%.2f/%.2f", sw.find("aro", 0).row.objective,
               sw.find("aro", 10).row.objective,
               sw.find("aro", 20).row.objective);
  detail += fmt(", arso %.2f/%.2f/%.2f", sw.find("arso", 0).row.objective,
                sw.find("arso", 10).row.objective,
                sw.find("arso", 20).row.objective);
  for (const std::string& s : broken) detail += "; " + s;
  return broken.empty();
}

bool check_exclusivity(const SweepData& sw, const PlanSolution& pi,
                       std::string& detail) {
  double worst = 0.0;
  int operations = 0;
  auto scan = [&](const std::vector<OperationValues>& ops) {
    for (const OperationValues& op : ops) {
      worst = std::max(worst, max_simultaneous(op));
      ++operations;
    }
  };
  for (const StudyResult& r : sw.results) {
    if (r.plan) scan(r.plan->operations);
    if (r.robust) {
      scan(r.robust->master_operations);
      scan(r.robust->worst_operations);
    }
  }
  scan(pi.operations);
  detail = std::to_string(operations) + " operations" +
           fmt(", max min(ch, ds) %.1e", worst);
  return worst <= 1e-6;
}

bool check_big_m(const SweepData& sw, std::string& detail) {
  double worst = 0.0;
  int solves = 0;
  for (const StudyResult& r : sw.results) {
    if (!r.robust) continue;
    for (const IterationRecord& it : r.robust->trace) {
      worst = std::max(worst, it.big_m_residual);
      ++solves;
    }
  }
  detail = std::to_string(solves) + " DSP optima" +
           fmt(", max |z - y B| %.1e", worst);
  return solves > 0 && worst <= 1e-6;
}

bool check_pi(const CaseData& c, const SweepData& sw, const PlanSolution& pi,
              std::string& detail) {
  double slack = std::numeric_limits<double>::infinity();
  for (const StudyResult& r : sw.results) {
    const double realized = realized_cost(c, r.investment);
    slack = std::min(slack, realized - pi.objective);
  }
  const std::vector<double> levels{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                   0.6, 0.7, 0.8, 0.9, 1.0};
  const std::vector<AutonomyPoint> curve =
      autonomy_curve(c, concatenated_profile(c), levels);
  bool monotone = true;
  double prev = -1.0;
  int feasible = 0;
  for (const AutonomyPoint& p : curve) {
    if (!p.feasible) continue;
    ++feasible;
    monotone = monotone && p.investment_cost >= prev - 1e-6;
    prev = p.investment_cost;
  }
  detail = fmt("min realized - PI %.4f", slack) + ", autonomy " +
           std::to_string(feasible) + "/" + std::to_string(levels.size()) +
           (monotone ? " levels monotone" : " levels NOT monotone");
  return slack >= -1e-6 * (1.0 + std::abs(pi.objective)) && monotone &&
         feasible >= 2;
}

bool check_reduction(std::string& detail) {
  auto sample = [](std::vector<double> pv) {
    TrajectorySample s;
    s.pv = std::move(pv);
    s.pl = Matrix(static_cast<int>(s.pv.size()), 1);
    return s;
  };
  const std::vector<std::vector<double>> pv{
      {0.00, 0.10, 0.20}, {0.05, 0.15, 0.20}, {0.30, 0.35, 0.10},
      {0.80, 0.70, 0.60}, {0.90, 0.85, 0.60}};
  std::vector<TrajectorySample> samples;
  for (const auto& p : pv) samples.push_back(sample(p));

  const ScenarioSet same = reduce_scenarios(samples, 5);
  bool identity = same.source == std::vector<int>{0, 1, 2, 3, 4};
  for (double p : same.probabilities) identity = identity && p == 0.2;

  const std::vector<double> weight{0.15, 0.25, 0.1, 0.2, 0.3};
  const ScenarioSet two = reduce_scenarios(samples, 2, weight);
  // Oracle: the kept pair with the least probability-weighted distance from
  // each dropped sample to its nearest kept one.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> keep;
  std::vector<double> prob;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      double cost = 0.0;
      std::vector<double> moved{weight[a], weight[b]};
      for (int i = 0; i < 5; ++i) {
        if (i == a || i == b) continue;
        double da = 0.0, db = 0.0;
        for (int t = 0; t < 3; ++t) {
          da += (pv[i][t] - pv[a][t]) * (pv[i][t] - pv[a][t]);
          db += (pv[i][t] - pv[b][t]) * (pv[i][t] - pv[b][t]);
        }
        da = std::sqrt(da);
        db = std::sqrt(db);
        cost += weight[i] * std::min(da, db);
        moved[da <= db ? 0 : 1] += weight[i];
      }
      if (cost < best - 1e-12) {
        best = cost;
        keep = {a, b};
        prob = moved;
      }
    }
  }
  const bool match = two.source == keep &&
                     std::abs(two.probabilities[0] - prob[0]) <= 1e-12 &&
                     std::abs(two.probabilities[1] - prob[1]) <= 1e-12;
  detail = std::string("identity ") + (identity ? "ok" : "broken") +
           ", k=2 keeps {" + std::to_string(two.source[0]) + "," +
           std::to_string(two.source[1]) + "} oracle {" +
           std::to_string(keep[0]) + "," + std::to_string(keep[1]) + "}";
  return identity && match;
}

bool check_determinism(const CaseData& c, const SweepData& sw,
                       std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path out =
      fs::temp_directory_path() / ("derplan_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(out);
  const std::string cmd = std::string("\"") + DERPLAN_CLI + "\" sweep \"" +
                          testing::source_path("cases/five_bus.json") +
                          "\" --betas 0,10,20 -q --out \"" + out.string() +
                          "\" > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) {
    detail = "cli sweep exited with " + std::to_string(rc);
    return false;
  }
  std::vector<ReportRow> rows;
  for (const StudyResult& r : sw.results) rows.push_back(r.row);
  int files = 1, differ = 0;
  if (read_file(out / "sweep.csv") != rows_csv(rows)) ++differ;
  for (const StudyResult& r : sw.results) {
    const std::string tag = r.row.formulation + "_b" +
                            std::to_string(r.row.beta_pl) + "_" +
                            std::to_string(r.row.beta_pv);
    ++files;
    if (read_file(out / (tag + ".json")) != plan_json(c, r.row, r.investment)) {
      ++differ;
      note("   differs: %s\n", tag);
    }
    ++files;
    if (read_file(out / (tag + "_capacities.csv")) !=
        capacities_csv(c, r.investment)) {
      ++differ;
    }
  }
  fs::remove_all(out);
  detail = std::to_string(files) + " report files compared, " +
           std::to_string(differ) + " differ";
  return differ == 0;
}

int run() {
  Report report;
  const auto start = Clock::now();
  const CaseData five = testing::bundled_case("five_bus.json");

  report.run(9, "scenario reduction", check_reduction);
  report.run(3, "strong duality per pattern", [&](std::string& d) {
    return check_strong_duality(five, d);
  });
  report.run(2, "oracle equivalence", check_oracle);
  report.run(1, "beta-zero collapse",
             [&](std::string& d) { return check_collapse(five, d); });

  note("%s\n", "-- sweep over beta 0, 10, 20 on five_bus");
  SweepData sw;
  const auto sweep_start = Clock::now();
  StudyOptions options = default_options();
  options.benders.on_iteration = [](const IterationRecord& r) {
    std::fprintf(stderr, "   iter %d lb %.6f ub %.6f\n", r.iter, r.lb, r.ub);
  };
  std::string sweep_error;
  try {
    sw.results = sweep(five, sw.betas, options);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  sw.seconds = seconds_since(sweep_start);
  note("   sweep took %s s\n", std::to_string(sw.seconds));
  PlanSolution pi;
  try {
    pi = perfect_information_benchmark(five);
  } catch (const std::exception& e) {
    sweep_error += std::string(" PI: ") + e.what();
  }
  auto needs_sweep = [&](int id, const std::string& name,
                         const std::function<bool(std::string&)>& f) {
    if (!sweep_error.empty()) {
      report.record(id, name, false, "sweep failed: " + sweep_error);
      return;
    }
    report.run(id, name, f);
  };

  needs_sweep(4, "Benders soundness",
              [&](std::string& d) { return check_benders(five, sw, d); });
  needs_sweep(5, "conservatism ordering",
              [&](std::string& d) { return check_ordering(sw, d); });
  needs_sweep(6, "battery exclusivity",
              [&](std::string& d) { return check_exclusivity(sw, pi, d); });
  needs_sweep(7, "big-M exactness",
              [&](std::string& d) { return check_big_m(sw, d); });
  needs_sweep(8, "PI dominance and autonomy",
              [&](std::string& d) { return check_pi(five, sw, pi, d); });
  needs_sweep(10, "sweep determinism",
              [&](std::string& d) { return check_determinism(five, sw, d); });

  std::printf("%d of 10 criteria failed (%.0f s)\n", report.failures(),
              seconds_since(start));
  return report.failures();
}

}  // namespace
}  // namespace derplan

int main() { return derplan::run(); }
