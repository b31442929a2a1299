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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "derplan/case_io.h"
#include "derplan/core_model.h"
#include "derplan/oracle.h"
#include "derplan/reports.h"
#include "derplan/study.h"
#include "derplan/uncertainty.h"

namespace py = pybind11;

namespace derplan {
namespace {

py::dict row_dict(const ReportRow& r) {
  py::dict d;
  d["formulation"] = r.formulation;
  d["beta_pl"] = r.beta_pl;
  d["beta_pv"] = r.beta_pv;
  d["objective"] = r.objective;
  d["investment_cost"] = r.investment_cost;
  d["operational_cost"] = r.operational_cost;
  d["pv_capacity"] = r.pv_capacity;
  d["bt_capacity"] = r.bt_capacity;
  d["pv_buses"] = r.pv_buses;
  d["bt_buses"] = r.bt_buses;
  d["iterations"] = r.iterations;
  d["status"] = r.status;
  return d;
}

py::dict result_dict(const CaseData& c, const StudyResult& s) {
  py::dict d = row_dict(s.row);
  py::dict pv, bt;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    const std::string& id = c.network.buses[i].id;
    pv[py::str(id)] = s.investment.gamma_pv[i];
    bt[py::str(id)] = s.investment.gamma_bt[i];
  }
  d["pv_by_bus"] = pv;
  d["bt_by_bus"] = bt;
  if (s.robust) {
    py::list trace;
    for (const IterationRecord& r : s.robust->trace) {
      py::dict t;
      t["iter"] = r.iter;
      t["lb"] = r.lb;
      t["ub"] = r.ub;
      t["mp_time_s"] = r.mp_time_s;
      t["dsp_time_s"] = r.dsp_time_s;
      t["u_star_digest"] = r.u_star_digest;
      trace.append(t);
    }
    d["trace"] = trace;
    d["lb"] = s.robust->lb;
    d["ub"] = s.robust->ub;
  }
  return d;
}

StudyOptions options(int beta_pl, int beta_pv, double tol, int max_iter,
                     const std::string& cut_style, bool multi_cut) {
  StudyOptions o;
  o.beta_pl = beta_pl;
  o.beta_pv = beta_pv;
  o.benders.tol = tol;
  o.benders.max_iter = max_iter;
  if (cut_style == "primal") {
    o.benders.cut_style = CutStyle::kPrimalBlock;
  } else if (cut_style == "dual") {
    o.benders.cut_style = CutStyle::kDual;
  } else {
    throw std::invalid_argument("cut_style must be 'primal' or 'dual'");
  }
  o.benders.multi_cut = multi_cut;
  return o;
}

}  // namespace
}  // namespace derplan

PYBIND11_MODULE(_core, m) {
  using namespace derplan;
  m.doc() = "PV and battery siting and sizing on radial networks";

  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<CapacityError>(m, "CapacityError");

  py::class_<CaseData>(m, "Case")
      .def_readonly("name", &CaseData::name)
      .def_readonly("currency", &CaseData::currency)
      .def_readonly("power_unit", &CaseData::power_unit)
      .def_property_readonly("num_buses",
                             [](const CaseData& c) { return c.network.num_buses(); })
      .def_property_readonly("horizon", &CaseData::horizon)
      .def_property_readonly("num_scenarios", &CaseData::num_scenarios)
      .def_property_readonly("bus_ids",
                             [](const CaseData& c) {
                               std::vector<std::string> ids;
                               for (const Bus& b : c.network.buses) ids.push_back(b.id);
                               return ids;
                             })
      .def("__repr__", [](const CaseData& c) {
        return "<Case " + c.name + ": " + std::to_string(c.network.num_buses()) +
               " buses, " + std::to_string(c.horizon()) + " slots, " +
               std::to_string(c.num_scenarios()) + " scenarios>";
      });

  m.def("load_case", &load_case, py::arg("path"),
        "Reads and validates a JSON case file; raises ValueError on bad input.");
  m.def("parse_case", &parse_case, py::arg("json_text"), py::arg("base_dir") = ".");
  m.def("validate_case",
        [](const CaseData& c) { return validate_case(c).violations; },
        py::arg("case"), "List of violations; empty when the case is valid.");
  m.def("reduce_case_scenarios", &reduce_case_scenarios, py::arg("case"),
        py::arg("k"));

  m.def(
      "solve",
      [](const CaseData& c, const std::string& formulation, int beta_pl,
         int beta_pv, double tol, int max_iter, const std::string& cut_style,
         bool multi_cut) {
        const StudyOptions o =
            options(beta_pl, beta_pv, tol, max_iter, cut_style, multi_cut);
        StudyResult r;
        {
          py::gil_scoped_release release;
          r = run_formulation(c, parse_formulation(formulation), o);
        }
        return result_dict(c, r);
      },
      py::arg("case"), py::arg("formulation"), py::arg("beta_pl") = 0,
      py::arg("beta_pv") = 0, py::arg("tol") = 1e-6, py::arg("max_iter") = 200,
      py::arg("cut_style") = "primal", py::arg("multi_cut") = false,
      "Solves one of det, tsso, sro, aro, arso and returns the report row.");

  m.def(
      "sweep_csv",
      [](const CaseData& c, const std::vector<int>& betas) {
        std::vector<ReportRow> rows;
        {
          py::gil_scoped_release release;
          for (const StudyResult& r : sweep(c, betas, StudyOptions{})) {
            rows.push_back(r.row);
          }
        }
        return rows_csv(rows);
      },
      py::arg("case"), py::arg("betas"));

  m.def(
      "perfect_information",
      [](const CaseData& c) {
        PlanSolution s;
        {
          py::gil_scoped_release release;
          s = perfect_information_benchmark(c);
        }
        return row_dict(report_row(s, 0, 0));
      },
      py::arg("case"));

  m.def(
      "autonomy_curve",
      [](const CaseData& c, const std::vector<double>& levels) {
        std::vector<AutonomyPoint> pts;
        {
          py::gil_scoped_release release;
          pts = autonomy_curve(c, concatenated_profile(c), levels);
        }
        py::list out;
        for (const AutonomyPoint& p : pts) {
          py::dict d;
          d["level"] = p.level;
          d["feasible"] = p.feasible;
          d["achieved"] = p.achieved;
          d["objective"] = p.objective;
          d["investment_cost"] = p.investment_cost;
          d["pv_capacity"] = p.pv_capacity;
          d["bt_capacity"] = p.bt_capacity;
          out.append(d);
        }
        return out;
      },
      py::arg("case"), py::arg("levels"));

  m.def(
      "count_extreme_points",
      [](const CaseData& c, int beta_pl, int beta_pv) {
        return count_extreme_points(budgeted_set(c, beta_pl, beta_pv));
      },
      py::arg("case"), py::arg("beta_pl"), py::arg("beta_pv"));

  m.def(
      "polygon_coefficients",
      [](int n) {
        std::vector<std::tuple<double, double, double>> out;
        for (const PolygonCut& p : polygon_coefficients(n)) {
          out.emplace_back(p.a, p.b, p.c);
        }
        return out;
      },
      py::arg("n_segments"));

  m.def("percentile", &percentile, py::arg("samples"), py::arg("p"));

  m.def(
      "reduce_scenarios",
      [](const std::vector<std::vector<double>>& pv, int k) {
        std::vector<TrajectorySample> samples;
        for (const auto& traj : pv) {
          TrajectorySample s;
          s.pv = traj;
          s.pl = Matrix(static_cast<int>(traj.size()), 1);
          samples.push_back(std::move(s));
        }
        const ScenarioSet r = reduce_scenarios(samples, k);
        return std::make_pair(r.source, r.probabilities);
      },
      py::arg("pv_trajectories"), py::arg("k"),
      "Backward reduction of equiprobable PV trajectories; returns the kept "
      "sample indices and their probabilities.");
}
