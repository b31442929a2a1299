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

#include "derplan/reports.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace derplan {
namespace {

using nlohmann::ordered_json;

// Numbers are emitted as strings of fixed precision inside JSON too, so the
// bytes do not depend on the float printer.
ordered_json number(double v) { return ordered_json::parse(format_number(v)); }

}  // namespace

std::string format_number(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Avoid "-0.000000".
  const double scale = std::pow(10.0, decimals);
  if (std::abs(v) * scale < 0.5) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

ReportRow report_row(const PlanSolution& s, int beta_pl, int beta_pv) {
  ReportRow r;
  r.formulation = s.formulation;
  r.beta_pl = beta_pl;
  r.beta_pv = beta_pv;
  r.objective = s.objective;
  r.investment_cost = s.investment_cost;
  r.operational_cost = s.operational_cost;
  r.pv_capacity = s.investment.total_pv();
  r.bt_capacity = s.investment.total_bt();
  r.pv_buses = s.investment.pv_sites();
  r.bt_buses = s.investment.bt_sites();
  return r;
}

ReportRow report_row(const RobustSolution& s, int beta_pl, int beta_pv) {
  ReportRow r;
  r.formulation = s.formulation;
  r.beta_pl = beta_pl;
  r.beta_pv = beta_pv;
  r.objective = s.objective;
  r.investment_cost = s.investment_cost;
  r.operational_cost = s.operational_cost;
  r.pv_capacity = s.investment.total_pv();
  r.bt_capacity = s.investment.total_bt();
  r.pv_buses = s.investment.pv_sites();
  r.bt_buses = s.investment.bt_sites();
  r.iterations = s.iterations();
  r.status = to_string(s.status);
  return r;
}

std::string rows_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "formulation,beta_pl,beta_pv,objective,investment_cost,"
         "operational_cost,pv_capacity,bt_capacity,pv_buses,bt_buses,"
         "iterations,status\n";
  for (const ReportRow& r : rows) {
    out << r.formulation << ',' << r.beta_pl << ',' << r.beta_pv << ','
        << format_number(r.objective) << ','
        << format_number(r.investment_cost) << ','
        << format_number(r.operational_cost) << ','
        << format_number(r.pv_capacity) << ','
        << format_number(r.bt_capacity) << ',' << r.pv_buses << ','
        << r.bt_buses << ',' << r.iterations << ',' << r.status << '\n';
  }
  return out.str();
}

std::string capacities_csv(const CaseData& c, const InvestmentValues& inv) {
  std::ostringstream out;
  out << "bus,pv,bt\n";
  for (int i = 0; i < c.network.num_buses(); ++i) {
    out << c.network.buses[i].id << ',' << format_number(inv.gamma_pv[i])
        << ',' << format_number(inv.gamma_bt[i]) << '\n';
  }
  return out.str();
}

std::string trace_jsonl(const std::vector<IterationRecord>& trace) {
  std::ostringstream out;
  for (const IterationRecord& r : trace) {
    ordered_json j;
    j["iter"] = r.iter;
    j["lb"] = number(r.lb);
    j["ub"] = number(r.ub);
    j["mp_time_s"] = r.mp_time_s;
    j["dsp_time_s"] = r.dsp_time_s;
    j["u_star_digest"] = r.u_star_digest;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string autonomy_csv(const std::vector<AutonomyPoint>& points) {
  std::ostringstream out;
  out << "level,feasible,achieved,objective,investment_cost,"
         "operational_cost,pv_capacity,bt_capacity\n";
  for (const AutonomyPoint& p : points) {
    out << format_number(p.level, 4) << ',' << (p.feasible ? 1 : 0) << ',';
    if (p.feasible) {
      out << format_number(p.achieved) << ',' << format_number(p.objective)
          << ',' << format_number(p.investment_cost) << ','
          << format_number(p.operational_cost) << ','
          << format_number(p.pv_capacity) << ','
          << format_number(p.bt_capacity) << '\n';
    } else {
      out << ",,,,,\n";
    }
  }
  return out.str();
}

std::string plan_json(const CaseData& c, const ReportRow& row,
                      const InvestmentValues& inv) {
  ordered_json j;
  j["case"] = c.name;
  j["currency"] = c.currency;
  j["power_unit"] = c.power_unit;
  j["formulation"] = row.formulation;
  j["beta_pl"] = row.beta_pl;
  j["beta_pv"] = row.beta_pv;
  j["status"] = row.status;
  j["iterations"] = row.iterations;
  j["objective"] = number(row.objective);
  j["investment_cost"] = number(row.investment_cost);
  j["operational_cost"] = number(row.operational_cost);
  j["pv_capacity"] = number(row.pv_capacity);
  j["bt_capacity"] = number(row.bt_capacity);
  j["pv_buses"] = row.pv_buses;
  j["bt_buses"] = row.bt_buses;
  ordered_json buses = ordered_json::array();
  for (int i = 0; i < c.network.num_buses(); ++i) {
    if (inv.gamma_pv[i] == 0.0 && inv.gamma_bt[i] == 0.0) continue;
    ordered_json b;
    b["bus"] = c.network.buses[i].id;
    b["pv"] = number(inv.gamma_pv[i]);
    b["bt"] = number(inv.gamma_bt[i]);
    buses.push_back(b);
  }
  j["sites"] = buses;
  return j.dump(2) + "\n";
}

std::string summary_text(const CaseData& c, const ReportRow& row) {
  std::ostringstream out;
  out << row.formulation << " on " << c.name;
  if (row.formulation != "det" && row.formulation != "tsso" &&
      row.formulation != "pi") {
    out << " (beta_pl=" << row.beta_pl << ", beta_pv=" << row.beta_pv << ")";
  }
  out << "\n";
  out << "  investment cost   " << format_number(row.investment_cost, 4) << ' '
      << c.currency << "\n";
  out << "  operational cost  " << format_number(row.operational_cost, 4)
      << ' ' << c.currency << "\n";
  out << "  objective         " << format_number(row.objective, 4) << ' '
      << c.currency << "\n";
  out << "  PV  " << format_number(row.pv_capacity, 3) << ' ' << c.power_unit
      << " at " << row.pv_buses << " bus(es)\n";
  out << "  BT  " << format_number(row.bt_capacity, 3) << ' ' << c.power_unit
      << "h at " << row.bt_buses << " bus(es)\n";
  if (row.iterations > 0) {
    out << "  " << row.iterations << " iteration(s), " << row.status << "\n";
  }
  return out.str();
}

}  // namespace derplan
