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

// derplan: DER siting and sizing studies from the command line.
//
//   derplan validate cases/five_bus.json
//   derplan solve aro cases/five_bus.json --beta 10 --out out/
//   derplan sweep cases/five_bus.json --betas 0,10,20 --out out/
//   derplan autonomy cases/five_bus.json --levels 0:1:0.05
//
// Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 a
// decomposition stopped before closing its gap.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "derplan/case_io.h"
#include "derplan/oracle.h"
#include "derplan/reports.h"
#include "derplan/study.h"
#include "derplan/uncertainty.h"

namespace derplan {
namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNotConverged = 4;

struct Flags {
  std::string case_path;
  std::string formulation;
  std::string out_dir;
  int beta = -1;
  int beta_pl = 0;
  int beta_pv = 0;
  int scenarios = 0;
  int segments = 0;
  double tol = 1e-6;
  int max_iter = 200;
  double feas_tol = 1e-6;
  double mip_gap = 1e-7;
  double time_limit = 0.0;
  double big_m = 0.0;
  bool adverse_only = false;
  std::string cut_style = "primal";
  bool multi_cut = false;
  std::string sro_pv = "all";
  std::string sro_load = "all";
  std::string betas = "0,10,20";
  std::string levels = "0:1:0.1";
  bool quiet = false;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 0) {
      throw std::invalid_argument("bad budget list '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty budget list");
  return out;
}

// "a:b:step" inclusive of b (within half a step), or a comma list.
std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::stringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !(step > 0.0) || b < a) {
      throw std::invalid_argument("bad level range '" + text + "'");
    }
    const int n = static_cast<int>(std::floor((b - a) / step + 0.5));
    for (int k = 0; k <= n; ++k) {
      out.push_back(std::min(b, a + k * step));
    }
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

CaseData load(const Flags& f) {
  if (!std::filesystem::is_regular_file(f.case_path)) {
    throw std::invalid_argument("no case file at " + f.case_path);
  }
  CaseData c = load_case(f.case_path);
  if (f.segments > 0) c.polygon_segments = f.segments;
  if (f.scenarios > 0) c = reduce_case_scenarios(c, f.scenarios);
  const ValidationReport report = validate_case(c);
  if (!report.ok()) {
    std::string msg = "invalid case:";
    for (const std::string& v : report.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return c;
}

StudyOptions study_options(const Flags& f) {
  StudyOptions o;
  o.beta_pl = f.beta >= 0 ? f.beta : f.beta_pl;
  o.beta_pv = f.beta >= 0 ? f.beta : f.beta_pv;
  SolverParams p;
  p.feas_tol = f.feas_tol;
  p.mip_gap = f.mip_gap;
  if (f.time_limit > 0.0) p.time_limit = f.time_limit;
  o.params = p;
  o.benders.tol = f.tol;
  o.benders.max_iter = f.max_iter;
  o.benders.mp_params = p;
  o.benders.dsp_params = p;
  o.benders.dsp.big_m = f.big_m;
  o.benders.dsp.adverse_only = f.adverse_only;
  if (f.cut_style == "primal") {
    o.benders.cut_style = CutStyle::kPrimalBlock;
  } else if (f.cut_style == "dual") {
    o.benders.cut_style = CutStyle::kDual;
  } else {
    throw std::invalid_argument("--cut-style must be primal or dual");
  }
  o.benders.multi_cut = f.multi_cut;
  if (f.sro_pv == "all") {
    o.sro.pv_rule = SroPvRule::kAllSlots;
  } else if (f.sro_pv == "top") {
    o.sro.pv_rule = SroPvRule::kTopPvBar;
  } else {
    throw std::invalid_argument("--sro-pv must be all or top");
  }
  if (f.sro_load == "all") {
    o.sro.load_rule = SroLoadRule::kAllSlots;
  } else if (f.sro_load == "top") {
    o.sro.load_rule = SroLoadRule::kTopHatPrice;
  } else {
    throw std::invalid_argument("--sro-load must be all or top");
  }
  if (!f.quiet) {
    o.benders.on_iteration = [](const IterationRecord& r) {
      std::fprintf(stderr, "  iter %3d  lb %.6f  ub %.6f  (mp %.2fs, dsp %.2fs)\n",
                   r.iter, r.lb, r.ub, r.mp_time_s, r.dsp_time_s);
    };
  }
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string tag(const ReportRow& r) {
  return r.formulation + "_b" + std::to_string(r.beta_pl) + "_" +
         std::to_string(r.beta_pv);
}

void write_result(const Flags& f, const CaseData& c, const StudyResult& r) {
  if (f.out_dir.empty()) return;
  const std::filesystem::path dir(f.out_dir);
  const std::string name = tag(r.row);
  write_file(dir / (name + ".json"), plan_json(c, r.row, r.investment));
  write_file(dir / (name + "_capacities.csv"), capacities_csv(c, r.investment));
  if (r.robust) {
    write_file(dir / "traces" / (name + ".jsonl"), trace_jsonl(r.robust->trace));
  }
}

bool converged(const StudyResult& r) {
  return !r.robust || r.robust->status == RobustStatus::kConverged;
}

int cmd_validate(const Flags& f) {
  const CaseData c = load(f);
  std::printf("%s: ok (%d buses, %d lines, %d slots, %d scenarios)\n",
              c.name.c_str(), c.network.num_buses(), c.network.num_lines(),
              c.horizon(), c.num_scenarios());
  return 0;
}

int cmd_solve(const Flags& f) {
  const CaseData c = load(f);
  const Formulation form = parse_formulation(f.formulation);
  const StudyResult r = run_formulation(c, form, study_options(f));
  std::cout << summary_text(c, r.row);
  if (!f.out_dir.empty()) {
    write_result(f, c, r);
    write_file(std::filesystem::path(f.out_dir) / (tag(r.row) + ".csv"),
               rows_csv({r.row}));
  }
  if (!converged(r)) {
    std::fprintf(stderr, "decomposition stopped: %s (gap %.3g)\n",
                 r.row.status.c_str(), r.robust->ub - r.robust->lb);
    return kExitNotConverged;
  }
  return 0;
}

int cmd_sweep(const Flags& f) {
  const CaseData c = load(f);
  const std::vector<StudyResult> results =
      sweep(c, parse_int_list(f.betas), study_options(f));
  std::vector<ReportRow> rows;
  bool all_converged = true;
  for (const StudyResult& r : results) {
    rows.push_back(r.row);
    all_converged = all_converged && converged(r);
    write_result(f, c, r);
  }
  const std::string csv = rows_csv(rows);
  std::cout << csv;
  if (!f.out_dir.empty()) {
    write_file(std::filesystem::path(f.out_dir) / "sweep.csv", csv);
  }
  return all_converged ? 0 : kExitNotConverged;
}

int cmd_pi(const Flags& f) {
  const CaseData c = load(f);
  const StudyOptions o = study_options(f);
  PlanSolution pi = perfect_information_benchmark(c, o.params);
  const ReportRow pi_row = report_row(pi, 0, 0);
  std::cout << summary_text(c, pi_row);

  // Realized cost of each formulation's plan on the concatenated horizon.
  std::ostringstream csv;
  csv << "formulation,beta_pl,beta_pv,realized_cost,pv_capacity,"
         "pv_deviation_from_pi\n";
  csv << "pi,0,0," << format_number(pi.objective) << ','
      << format_number(pi_row.pv_capacity) << ',' << format_number(0.0)
      << '\n';
  bool all_converged = true;
  for (Formulation form : {Formulation::kDeterministic, Formulation::kTsso,
                           Formulation::kSro, Formulation::kAro,
                           Formulation::kArso}) {
    const StudyResult r = run_formulation(c, form, o);
    all_converged = all_converged && converged(r);
    const double cost = realized_cost(c, r.investment, o.params);
    csv << r.row.formulation << ',' << r.row.beta_pl << ',' << r.row.beta_pv
        << ',' << format_number(cost) << ','
        << format_number(r.row.pv_capacity) << ','
        << format_number(std::abs(r.row.pv_capacity - pi_row.pv_capacity))
        << '\n';
  }
  std::cout << csv.str();
  if (!f.out_dir.empty()) {
    const std::filesystem::path dir(f.out_dir);
    write_file(dir / "pi.json", plan_json(c, pi_row, pi.investment));
    write_file(dir / "pi_comparison.csv", csv.str());
  }
  return all_converged ? 0 : kExitNotConverged;
}

int cmd_autonomy(const Flags& f) {
  const CaseData c = load(f);
  const StudyOptions o = study_options(f);
  const std::vector<AutonomyPoint> points = autonomy_curve(
      c, concatenated_profile(c), parse_levels(f.levels), o.params);
  const std::string csv = autonomy_csv(points);
  std::cout << csv;
  if (!f.out_dir.empty()) {
    write_file(std::filesystem::path(f.out_dir) / "autonomy.csv", csv);
  }
  return 0;
}

// DSP optimum against enumeration at the deterministic and robust plans.
int cmd_oracle_check(const Flags& f) {
  const CaseData c = load(f);
  StudyOptions o = study_options(f);
  if (f.beta < 0 && f.beta_pl == 0 && f.beta_pv == 0) o.beta_pl = o.beta_pv = 1;
  const BudgetedSet set = budgeted_set(c, o.beta_pl, o.beta_pv);
  OracleOptions oracle;
  oracle.params = o.params;

  int failures = 0;
  auto compare = [&](const char* what, double engine, double brute,
                     uint64_t evaluated) {
    const double tol = 1e-6 * (1.0 + std::abs(brute));
    const bool ok = std::abs(engine - brute) <= tol;
    if (!ok) ++failures;
    std::printf("%-28s engine %.6f  brute %.6f  (%llu points)  %s\n", what,
                engine, brute, static_cast<unsigned long long>(evaluated),
                ok ? "ok" : "MISMATCH");
  };

  const StudyResult det = run_formulation(c, Formulation::kDeterministic, o);
  const Matrix det_w = det.plan->operations[0].w;
  {
    const DualSubproblem dsp = build_dual_subproblem(
        c, set, {nominal_profile(c)}, {1.0}, {det.investment, {det_w}}, true,
        o.benders.dsp);
    const DspResult res = solve_dual_subproblem(dsp, set, o.benders.dsp_params);
    const WorstCase wc = brute_force_aro(c, set, det.investment, det_w, oracle);
    compare("aro dsp at det plan", res.value, wc.value, wc.evaluated);
  }
  const StudyResult aro = run_formulation(c, Formulation::kAro, o);
  {
    const WorstCase wc = brute_force_aro(c, set, aro.investment,
                                         aro.robust->w[0], oracle);
    compare("aro worst case at aro plan", aro.robust->operational_cost,
            wc.value, wc.evaluated);
  }
  const StudyResult arso = run_formulation(c, Formulation::kArso, o);
  {
    const WorstCase wc =
        brute_force_arso(c, set, arso.investment, arso.robust->w, oracle);
    compare("arso worst case at arso plan", arso.robust->operational_cost,
            wc.value, wc.evaluated);
  }
  return failures == 0 ? 0 : kExitSolver;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Siting and sizing of PV and batteries in radial networks"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("case", f.case_path, "Case file (JSON)")->required();
    sub->add_option("--out", f.out_dir, "Directory for JSON/CSV reports");
    sub->add_option("--beta", f.beta, "Budget for both load and PV")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--beta-pl", f.beta_pl, "Load budget per bus")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--beta-pv", f.beta_pv, "PV budget")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--scenarios", f.scenarios,
                    "Reduce the case scenarios to this many")
        ->check(CLI::PositiveNumber);
    sub->add_option("--segments", f.segments, "Line-capacity polygon sides")
        ->check(CLI::Range(4, 1000));
    sub->add_option("--tol", f.tol, "Relative decomposition gap");
    sub->add_option("--max-iter", f.max_iter, "Decomposition iteration cap");
    sub->add_option("--feas-tol", f.feas_tol, "Solver feasibility tolerance");
    sub->add_option("--mip-gap", f.mip_gap, "Relative MIP gap");
    sub->add_option("--time-limit", f.time_limit, "Seconds per solver call");
    sub->add_option("--big-m", f.big_m,
                    "Bound on the linearized duals (0: derived from the set)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--adverse-only", f.adverse_only,
                  "Worst case searched over load increases and PV drops only");
    sub->add_option("--cut-style", f.cut_style, "primal or dual");
    sub->add_flag("--multi-cut", f.multi_cut,
                  "ARSO: one eta per scenario (may overestimate)");
    sub->add_option("--sro-pv", f.sro_pv, "SRO PV rule: all or top");
    sub->add_option("--sro-load", f.sro_load, "SRO load rule: all or top");
    sub->add_flag("-q,--quiet", f.quiet, "No iteration log");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a case file");
  validate->add_option("case", f.case_path, "Case file (JSON)")->required();
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one formulation");
  solve_cmd->add_option("formulation", f.formulation,
                        "det, tsso, sro, aro or arso")
      ->required();
  add_common(solve_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Budget sweep");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--betas", f.betas, "Comma-separated budgets");
  CLI::App* pi = app.add_subcommand("pi", "Perfect-information benchmark");
  add_common(pi);
  CLI::App* autonomy = app.add_subcommand("autonomy", "Autonomy curve");
  add_common(autonomy);
  autonomy->add_option("--levels", f.levels, "a:b:step or a comma list");
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Cross-check against enumeration");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*validate) return cmd_validate(f);
    if (*solve_cmd) return cmd_solve(f);
    if (*sweep_cmd) return cmd_sweep(f);
    if (*pi) return cmd_pi(f);
    if (*autonomy) return cmd_autonomy(f);
    if (*oracle) return cmd_oracle_check(f);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  } catch (const EnvironmentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return 0;
}

}  // namespace derplan

int main(int argc, char** argv) { return derplan::run(argc, argv); }
