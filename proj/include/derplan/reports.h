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

// Machine-readable reports. CSV and JSON output carry no timings and use
// fixed float formatting, so identical runs produce identical bytes.

#ifndef DERPLAN_REPORTS_H_
#define DERPLAN_REPORTS_H_

#include <string>
#include <vector>

#include "derplan/aro.h"
#include "derplan/core_model.h"
#include "derplan/deterministic.h"
#include "derplan/oracle.h"

namespace derplan {

struct ReportRow {
  std::string formulation;
  int beta_pl = 0;
  int beta_pv = 0;
  double objective = 0.0;
  double investment_cost = 0.0;
  double operational_cost = 0.0;
  double pv_capacity = 0.0;
  double bt_capacity = 0.0;
  int pv_buses = 0;
  int bt_buses = 0;
  int iterations = 0;          // 0 for single-shot formulations
  std::string status = "optimal";
};

ReportRow report_row(const PlanSolution& s, int beta_pl, int beta_pv);
ReportRow report_row(const RobustSolution& s, int beta_pl, int beta_pv);

// Header plus one line per row, floats with 6 decimals.
std::string rows_csv(const std::vector<ReportRow>& rows);

// Per-bus capacities of a plan: bus,pv,bt.
std::string capacities_csv(const CaseData& c, const InvestmentValues& inv);

// One JSON object per line: iter, lb, ub, mp_time_s, dsp_time_s,
// u_star_digest.
std::string trace_jsonl(const std::vector<IterationRecord>& trace);

std::string autonomy_csv(const std::vector<AutonomyPoint>& points);

// Summary object with units, rows and per-bus capacities, pretty-printed.
std::string plan_json(const CaseData& c, const ReportRow& row,
                      const InvestmentValues& inv);

// Human-readable one-plan summary for the terminal.
std::string summary_text(const CaseData& c, const ReportRow& row);

// Fixed-precision decimal rendering used by every report.
std::string format_number(double v, int decimals = 6);

}  // namespace derplan

#endif  // DERPLAN_REPORTS_H_
