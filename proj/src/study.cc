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

#include "derplan/study.h"

#include <stdexcept>

#include "derplan/uncertainty.h"

namespace derplan {

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::kDeterministic:
      return "det";
    case Formulation::kTsso:
      return "tsso";
    case Formulation::kSro:
      return "sro";
    case Formulation::kAro:
      return "aro";
    case Formulation::kArso:
      return "arso";
  }
  return "unknown";
}

Formulation parse_formulation(const std::string& name) {
  for (Formulation f : {Formulation::kDeterministic, Formulation::kTsso,
                        Formulation::kSro, Formulation::kAro,
                        Formulation::kArso}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown formulation '" + name +
                              "' (expected det, tsso, sro, aro or arso)");
}

StudyResult run_formulation(const CaseData& c, Formulation f,
                            const StudyOptions& options) {
  StudyResult out;
  const int bpl = options.beta_pl;
  const int bpv = options.beta_pv;
  switch (f) {
    case Formulation::kDeterministic: {
      PlanSolution s = solve_deterministic(c, nominal_profile(c), options.params);
      s.formulation = "det";
      out.row = report_row(s, 0, 0);
      out.investment = s.investment;
      out.plan = std::move(s);
      break;
    }
    case Formulation::kTsso: {
      PlanSolution s = solve_tsso(c, scenario_set(c), options.params);
      out.row = report_row(s, 0, 0);
      out.investment = s.investment;
      out.plan = std::move(s);
      break;
    }
    case Formulation::kSro: {
      PlanSolution s = solve_sro(c, budgeted_set(c, bpl, bpv), options.sro,
                                 options.params);
      out.row = report_row(s, bpl, bpv);
      out.investment = s.investment;
      out.plan = std::move(s);
      break;
    }
    case Formulation::kAro: {
      RobustSolution s =
          solve_aro(c, budgeted_set(c, bpl, bpv), options.benders);
      out.row = report_row(s, bpl, bpv);
      out.investment = s.investment;
      out.robust = std::move(s);
      break;
    }
    case Formulation::kArso: {
      RobustSolution s =
          solve_arso(c, budgeted_set(c, bpl, bpv), options.benders);
      // PV follows the scenarios, so only the load budget applies.
      out.row = report_row(s, bpl, 0);
      out.investment = s.investment;
      out.robust = std::move(s);
      break;
    }
  }
  return out;
}

std::vector<StudyResult> sweep(const CaseData& c, const std::vector<int>& betas,
                               const StudyOptions& options) {
  std::vector<StudyResult> out;
  out.push_back(run_formulation(c, Formulation::kDeterministic, options));
  out.push_back(run_formulation(c, Formulation::kTsso, options));
  for (int beta : betas) {
    StudyOptions o = options;
    o.beta_pl = beta;
    o.beta_pv = beta;
    for (Formulation f :
         {Formulation::kSro, Formulation::kAro, Formulation::kArso}) {
      out.push_back(run_formulation(c, f, o));
    }
  }
  return out;
}

double realized_cost(const CaseData& c, const InvestmentValues& inv,
                     const SolverParams& params) {
  return evaluate_plan(c, inv, concatenated_profile(c), params).objective;
}

}  // namespace derplan
