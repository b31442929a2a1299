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

#include "derplan/deterministic.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace derplan {
namespace {

std::string idx(const std::string& prefix, const char* name, int t, int i) {
  return prefix + name + "[" + std::to_string(t) + "," + std::to_string(i) +
         "]";
}

std::string idx(const std::string& prefix, const char* name, int i) {
  return prefix + name + "[" + std::to_string(i) + "]";
}

void check_profile(const CaseData& c, const OperatingProfile& profile) {
  const int T = profile.horizon();
  const int B = c.network.num_buses();
  if (T == 0 || static_cast<int>(profile.price.size()) != T ||
      profile.pl.rows() != T || profile.pl.cols() != B ||
      profile.ql.rows() != T || profile.ql.cols() != B) {
    throw std::invalid_argument(
        "operating profile does not match the network and horizon");
  }
}

// Bounds after pinning the slack bus to the voltage and angle reference.
double vmin(const CaseData& c, int i) {
  return i == c.network.substation_index() ? 1.0 : c.network.buses[i].v_min;
}
double vmax(const CaseData& c, int i) {
  return i == c.network.substation_index() ? 1.0 : c.network.buses[i].v_max;
}
double thmin(const CaseData& c, int i) {
  return i == c.network.substation_index() ? 0.0
                                           : c.network.buses[i].theta_min;
}
double thmax(const CaseData& c, int i) {
  return i == c.network.substation_index() ? 0.0
                                           : c.network.buses[i].theta_max;
}

}  // namespace

double InvestmentValues::total_pv() const {
  double s = 0.0;
  for (double g : gamma_pv) s += g;
  return s;
}

double InvestmentValues::total_bt() const {
  double s = 0.0;
  for (double g : gamma_bt) s += g;
  return s;
}

int InvestmentValues::pv_sites() const {
  return static_cast<int>(
      std::count_if(nu_pv.begin(), nu_pv.end(), [](double v) { return v > 0.5; }));
}

int InvestmentValues::bt_sites() const {
  return static_cast<int>(
      std::count_if(nu_bt.begin(), nu_bt.end(), [](double v) { return v > 0.5; }));
}

Matrix delta_p(const OperationValues& op, const OperatingProfile& profile) {
  Matrix d(op.pg.rows(), op.pg.cols());
  for (int t = 0; t < d.rows(); ++t) {
    for (int i = 0; i < d.cols(); ++i) {
      d(t, i) = op.pg(t, i) + op.pv(t, i) - profile.pl(t, i) + op.ds(t, i) -
                op.ch(t, i);
    }
  }
  return d;
}

Matrix delta_q(const OperationValues& op, const OperatingProfile& profile) {
  Matrix d(op.qg.rows(), op.qg.cols());
  for (int t = 0; t < d.rows(); ++t) {
    for (int i = 0; i < d.cols(); ++i) d(t, i) = op.qg(t, i) - profile.ql(t, i);
  }
  return d;
}

InvestmentVars add_investment(LinearModel& model, const CaseData& c,
                              bool rows) {
  const TechParams& tp = c.tech;
  InvestmentVars inv;
  LinearExpr n_pv, n_bt;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    const Bus& bus = c.network.buses[i];
    inv.nu_pv.push_back(model.add_variable(idx("", "nu_pv", i), 0.0,
                                           bus.pv_allowed ? 1.0 : 0.0,
                                           VarType::kBinary));
    inv.nu_bt.push_back(model.add_variable(idx("", "nu_bt", i), 0.0,
                                           bus.bess_allowed ? 1.0 : 0.0,
                                           VarType::kBinary));
    inv.gamma_pv.push_back(
        model.add_variable(idx("", "gamma_pv", i), 0.0, tp.pv_cap_max));
    inv.gamma_bt.push_back(
        model.add_variable(idx("", "gamma_bt", i), 0.0, tp.bt_cap_max));
    if (!rows) continue;
    model.add_constraint(idx("", "pv_cap_min", i),
                         LinearExpr()
                             .add(inv.gamma_pv[i], 1.0)
                             .add(inv.nu_pv[i], -tp.pv_cap_min),
                         RowSense::kGreaterEqual, 0.0);
    model.add_constraint(idx("", "pv_cap_max", i),
                         LinearExpr()
                             .add(inv.gamma_pv[i], 1.0)
                             .add(inv.nu_pv[i], -tp.pv_cap_max),
                         RowSense::kLessEqual, 0.0);
    model.add_constraint(idx("", "bt_cap_min", i),
                         LinearExpr()
                             .add(inv.gamma_bt[i], 1.0)
                             .add(inv.nu_bt[i], -tp.bt_cap_min),
                         RowSense::kGreaterEqual, 0.0);
    model.add_constraint(idx("", "bt_cap_max", i),
                         LinearExpr()
                             .add(inv.gamma_bt[i], 1.0)
                             .add(inv.nu_bt[i], -tp.bt_cap_max),
                         RowSense::kLessEqual, 0.0);
    n_pv.add(inv.nu_pv[i], 1.0);
    n_bt.add(inv.nu_bt[i], 1.0);
  }
  if (!rows) return inv;
  model.add_constraint("pv_count", n_pv, RowSense::kLessEqual, tp.n_pv_max);
  model.add_constraint("bt_count", n_bt, RowSense::kLessEqual, tp.n_bt_max);
  return inv;
}

LinearExpr investment_cost_expr(const CaseData& c, const InvestmentVars& inv) {
  const CostParams& cp = c.costs;
  LinearExpr e;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    e.add(inv.gamma_pv[i], cp.c_pv[i]);
    e.add(inv.nu_pv[i], cp.i_pv[i]);
    e.add(inv.gamma_bt[i], cp.c_bt[i]);
    e.add(inv.nu_bt[i], cp.i_bt[i]);
  }
  return e;
}

VarGrid add_commitment(LinearModel& model, const CaseData& c,
                       const InvestmentVars& inv, int horizon,
                       const std::string& prefix, bool rows) {
  const int B = c.network.num_buses();
  VarGrid w(horizon, B);
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < B; ++i) {
      w(t, i) = model.add_binary(idx(prefix, "w", t, i));
      if (!c.network.buses[i].bess_allowed) model.mutable_variable(w(t, i)).ub = 0.0;
      if (!rows) continue;
      model.add_constraint(idx(prefix, "w_link", t, i),
                           LinearExpr().add(w(t, i), 1.0).add(inv.nu_bt[i], -1.0),
                           RowSense::kLessEqual, 0.0);
    }
  }
  return w;
}

OperationVars add_operation(LinearModel& model, const CaseData& c,
                            const OperatingProfile& profile,
                            const InvestmentVars& inv, const VarGrid& w,
                            const std::string& prefix) {
  check_profile(c, profile);
  const Network& net = c.network;
  const Topology topo = Topology::of(net);
  const TechParams& tp = c.tech;
  const int T = profile.horizon();
  const int B = net.num_buses();
  const int L = net.num_lines();
  if (w.rows() != T || w.cols() != B) {
    throw std::invalid_argument("commitment grid does not match the horizon");
  }
  const std::vector<PolygonCut> cuts = polygon_coefficients(c.polygon_segments);

  OperationVars op;
  op.pg = op.qg = op.pv = op.ch = op.ds = op.soc = op.v = op.theta =
      VarGrid(T, B);
  op.p = op.q = VarGrid(T, L);
  op.balance = op.pv_limit = Grid<int>(T, B, -1);

  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      op.pg(t, i) = model.add_variable(idx(prefix, "pg", t, i), 0.0, kInf);
      op.qg(t, i) = model.add_variable(idx(prefix, "qg", t, i), -kInf, kInf);
      op.pv(t, i) = model.add_variable(idx(prefix, "pv", t, i), 0.0, kInf);
      op.ch(t, i) = model.add_variable(idx(prefix, "ch", t, i), 0.0, kInf);
      op.ds(t, i) = model.add_variable(idx(prefix, "ds", t, i), 0.0, kInf);
      op.soc(t, i) = model.add_variable(idx(prefix, "soc", t, i), 0.0, kInf);
      op.v(t, i) = model.add_variable(idx(prefix, "v", t, i), 0.0, kInf);
      op.theta(t, i) =
          model.add_variable(idx(prefix, "theta", t, i), -kInf, kInf);
    }
    for (int l = 0; l < L; ++l) {
      op.p(t, l) = model.add_variable(idx(prefix, "p", t, l), -kInf, kInf);
      op.q(t, l) = model.add_variable(idx(prefix, "q", t, l), -kInf, kInf);
    }
  }

  const double base = net.base_kva;
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      const Bus& bus = net.buses[i];
      LinearExpr bp, bq;
      for (int l : topo.outgoing[i]) {
        bp.add(op.p(t, l), 1.0);
        bq.add(op.q(t, l), 1.0);
      }
      for (int l : topo.incoming[i]) {
        bp.add(op.p(t, l), -1.0);
        bq.add(op.q(t, l), -1.0);
      }
      bp.add(op.pg(t, i), -1.0)
          .add(op.pv(t, i), -1.0)
          .add(op.ds(t, i), -1.0)
          .add(op.ch(t, i), 1.0);
      bq.add(op.qg(t, i), -1.0);
      op.balance(t, i) = model.add_constraint(
          idx(prefix, "bal_p", t, i), bp, RowSense::kEqual, -profile.pl(t, i));
      model.add_constraint(idx(prefix, "bal_q", t, i), bq, RowSense::kEqual,
                           -profile.ql(t, i));

      model.add_constraint(idx(prefix, "pg_max", t, i),
                           LinearExpr().add(op.pg(t, i), 1.0),
                           RowSense::kLessEqual, bus.pg_max);
      model.add_constraint(idx(prefix, "qg_min", t, i),
                           LinearExpr().add(op.qg(t, i), 1.0),
                           RowSense::kGreaterEqual, bus.qg_min);
      model.add_constraint(idx(prefix, "qg_max", t, i),
                           LinearExpr().add(op.qg(t, i), 1.0),
                           RowSense::kLessEqual, bus.qg_max);
      model.add_constraint(idx(prefix, "v_min", t, i),
                           LinearExpr().add(op.v(t, i), 1.0),
                           RowSense::kGreaterEqual, vmin(c, i));
      model.add_constraint(idx(prefix, "v_max", t, i),
                           LinearExpr().add(op.v(t, i), 1.0),
                           RowSense::kLessEqual, vmax(c, i));

      op.pv_limit(t, i) = model.add_constraint(
          idx(prefix, "pv_avail", t, i),
          LinearExpr()
              .add(op.pv(t, i), 1.0)
              .add(inv.gamma_pv[i], -profile.pv[t]),
          RowSense::kLessEqual, 0.0);

      LinearExpr soc;
      soc.add(op.soc(t, i), 1.0)
          .add(op.ch(t, i), -tp.eff_charge * tp.dt)
          .add(op.ds(t, i), tp.dt / tp.eff_discharge);
      if (t == 0) {
        soc.add(inv.gamma_bt[i], -tp.soc_init);
      } else {
        soc.add(op.soc(t - 1, i), -1.0);
      }
      model.add_constraint(idx(prefix, "soc_dyn", t, i), soc, RowSense::kEqual,
                           0.0);
      model.add_constraint(idx(prefix, "soc_min", t, i),
                           LinearExpr()
                               .add(op.soc(t, i), 1.0)
                               .add(inv.gamma_bt[i], -tp.soc_min),
                           RowSense::kGreaterEqual, 0.0);
      model.add_constraint(idx(prefix, "soc_max", t, i),
                           LinearExpr()
                               .add(op.soc(t, i), 1.0)
                               .add(inv.gamma_bt[i], -tp.soc_max),
                           RowSense::kLessEqual, 0.0);
      model.add_constraint(
          idx(prefix, "ch_max", t, i),
          LinearExpr().add(op.ch(t, i), 1.0).add(w(t, i), -tp.pb),
          RowSense::kLessEqual, 0.0);
      // ds <= PB (1 - w) - PB (1 - nu_bt)
      model.add_constraint(idx(prefix, "ds_max", t, i),
                           LinearExpr()
                               .add(op.ds(t, i), 1.0)
                               .add(w(t, i), tp.pb)
                               .add(inv.nu_bt[i], -tp.pb),
                           RowSense::kLessEqual, 0.0);
      model.add_constraint(idx(prefix, "theta_min", t, i),
                           LinearExpr().add(op.theta(t, i), 1.0),
                           RowSense::kGreaterEqual, thmin(c, i));
      model.add_constraint(idx(prefix, "theta_max", t, i),
                           LinearExpr().add(op.theta(t, i), 1.0),
                           RowSense::kLessEqual, thmax(c, i));
    }

    for (int l = 0; l < L; ++l) {
      const Line& line = net.lines[l];
      const int f = topo.from[l];
      const int to = topo.to[l];
      const double r = line.r / base;
      const double x = line.x / base;
      model.add_constraint(idx(prefix, "vdrop", t, l),
                           LinearExpr()
                               .add(op.v(t, to), 1.0)
                               .add(op.v(t, f), -1.0)
                               .add(op.p(t, l), 2.0 * r)
                               .add(op.q(t, l), 2.0 * x),
                           RowSense::kEqual, 0.0);
      model.add_constraint(idx(prefix, "angle", t, l),
                           LinearExpr()
                               .add(op.theta(t, f), 1.0)
                               .add(op.theta(t, to), -1.0)
                               .add(op.p(t, l), -x)
                               .add(op.q(t, l), r),
                           RowSense::kEqual, 0.0);
      for (size_t k = 0; k < cuts.size(); ++k) {
        model.add_constraint(
            prefix + "smax[" + std::to_string(t) + "," + std::to_string(l) +
                "," + std::to_string(k) + "]",
            LinearExpr().add(op.p(t, l), cuts[k].a).add(op.q(t, l), cuts[k].b),
            RowSense::kLessEqual, -cuts[k].c * line.s_max);
      }
    }
  }

  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      op.cost.add(op.pg(t, i), profile.price[t]);
      op.cost.add(op.pv(t, i), c.costs.oc_pv);
      op.cost.add(op.ds(t, i), c.costs.oc_bt);
    }
  }
  return op;
}

DeterministicModel build_deterministic(const CaseData& c,
                                       const OperatingProfile& profile) {
  check_profile(c, profile);
  DeterministicModel m{LinearModel("deterministic"), {}, {}, {}};
  m.inv = add_investment(m.model, c);
  m.w = add_commitment(m.model, c, m.inv, profile.horizon(), "");
  m.op = add_operation(m.model, c, profile, m.inv, m.w, "");
  LinearExpr obj = investment_cost_expr(c, m.inv);
  obj.add(m.op.cost);
  m.model.set_objective(obj, ObjectiveSense::kMinimize);
  return m;
}

DeterministicModel build_deterministic(const CaseData& c,
                                       const Realization& realization) {
  return build_deterministic(c,
                             with_realization(nominal_profile(c), realization));
}

InvestmentValues extract_investment(const SolveResult& r,
                                    const InvestmentVars& inv) {
  InvestmentValues v;
  for (size_t i = 0; i < inv.nu_pv.size(); ++i) {
    v.nu_pv.push_back(std::round(r.value(inv.nu_pv[i])));
    v.nu_bt.push_back(std::round(r.value(inv.nu_bt[i])));
    v.gamma_pv.push_back(r.value(inv.gamma_pv[i]));
    v.gamma_bt.push_back(r.value(inv.gamma_bt[i]));
  }
  return v;
}

Matrix extract_grid(const SolveResult& r, const VarGrid& vars) {
  Matrix m(vars.rows(), vars.cols());
  for (int a = 0; a < vars.rows(); ++a) {
    for (int b = 0; b < vars.cols(); ++b) m(a, b) = r.value(vars(a, b));
  }
  return m;
}

OperationValues extract_operation(const SolveResult& r, const OperationVars& op,
                                  const VarGrid& w) {
  OperationValues v;
  v.pg = extract_grid(r, op.pg);
  v.qg = extract_grid(r, op.qg);
  v.pv = extract_grid(r, op.pv);
  v.ch = extract_grid(r, op.ch);
  v.ds = extract_grid(r, op.ds);
  v.soc = extract_grid(r, op.soc);
  v.w = extract_grid(r, w);
  for (double& x : v.w.data()) x = std::round(x);
  v.v = extract_grid(r, op.v);
  v.theta = extract_grid(r, op.theta);
  v.p = extract_grid(r, op.p);
  v.q = extract_grid(r, op.q);
  return v;
}

std::map<VarRef, double> first_stage_assignment(const InvestmentVars& vars,
                                                const InvestmentValues& values,
                                                const VarGrid& w_vars,
                                                const Matrix& w_values) {
  std::map<VarRef, double> fix;
  for (size_t i = 0; i < vars.nu_pv.size(); ++i) {
    fix[vars.nu_pv[i]] = values.nu_pv[i];
    fix[vars.nu_bt[i]] = values.nu_bt[i];
    fix[vars.gamma_pv[i]] = values.gamma_pv[i];
    fix[vars.gamma_bt[i]] = values.gamma_bt[i];
  }
  for (int t = 0; t < w_vars.rows(); ++t) {
    for (int i = 0; i < w_vars.cols(); ++i) fix[w_vars(t, i)] = w_values(t, i);
  }
  return fix;
}

double investment_cost(const CaseData& c, const InvestmentValues& inv) {
  const CostParams& cp = c.costs;
  double total = 0.0;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    total += inv.gamma_pv[i] * cp.c_pv[i] + inv.nu_pv[i] * cp.i_pv[i] +
             inv.gamma_bt[i] * cp.c_bt[i] + inv.nu_bt[i] * cp.i_bt[i];
  }
  return total;
}

double operational_cost(const CaseData& c, const OperationValues& op,
                        const OperatingProfile& profile) {
  double total = 0.0;
  for (int t = 0; t < op.pg.rows(); ++t) {
    for (int i = 0; i < op.pg.cols(); ++i) {
      total += profile.price[t] * op.pg(t, i) + c.costs.oc_pv * op.pv(t, i) +
               c.costs.oc_bt * op.ds(t, i);
    }
  }
  return total;
}

double ResidualReport::worst() const {
  double w = 0.0;
  for (const auto& [family, r] : max_residual) w = std::max(w, r);
  return w;
}

std::vector<std::string> ResidualReport::violated(double tol) const {
  std::vector<std::string> out;
  for (const auto& [family, r] : max_residual) {
    if (r > tol) out.push_back(family);
  }
  return out;
}

ResidualReport check_feasibility(const CaseData& c, const InvestmentValues& inv,
                                 const OperationValues& op,
                                 const OperatingProfile& profile) {
  const Network& net = c.network;
  const Topology topo = Topology::of(net);
  const TechParams& tp = c.tech;
  const int T = profile.horizon();
  const int B = net.num_buses();
  const std::vector<PolygonCut> cuts = polygon_coefficients(c.polygon_segments);

  ResidualReport rep;
  auto& res = rep.max_residual;
  for (const char* family :
       {"active_balance", "reactive_balance", "pg_max", "qg_bounds",
        "v_bounds", "voltage_drop", "line_capacity", "angle", "pv_available",
        "soc_dynamics", "soc_bounds", "charge_limit", "discharge_limit",
        "w_link", "theta_bounds", "pv_capacity", "bt_capacity", "pv_count",
        "bt_count", "binary", "sign"}) {
    res[family] = 0.0;
  }
  auto note = [&](const char* family, double r) {
    res[family] = std::max(res[family], r);
  };
  auto above = [](double x, double hi) { return std::max(0.0, x - hi); };
  auto below = [](double x, double lo) { return std::max(0.0, lo - x); };
  auto binary = [](double x) { return std::min(std::abs(x), std::abs(x - 1.0)); };

  int n_pv = 0, n_bt = 0;
  for (int i = 0; i < B; ++i) {
    note("binary", binary(inv.nu_pv[i]));
    note("binary", binary(inv.nu_bt[i]));
    note("pv_capacity", below(inv.gamma_pv[i], tp.pv_cap_min * inv.nu_pv[i]));
    note("pv_capacity", above(inv.gamma_pv[i], tp.pv_cap_max * inv.nu_pv[i]));
    note("bt_capacity", below(inv.gamma_bt[i], tp.bt_cap_min * inv.nu_bt[i]));
    note("bt_capacity", above(inv.gamma_bt[i], tp.bt_cap_max * inv.nu_bt[i]));
    if (!net.buses[i].pv_allowed) note("pv_capacity", std::abs(inv.nu_pv[i]));
    if (!net.buses[i].bess_allowed) note("bt_capacity", std::abs(inv.nu_bt[i]));
    n_pv += inv.nu_pv[i] > 0.5;
    n_bt += inv.nu_bt[i] > 0.5;
  }
  note("pv_count", above(n_pv, tp.n_pv_max));
  note("bt_count", above(n_bt, tp.n_bt_max));

  const Matrix dp = delta_p(op, profile);
  const Matrix dq = delta_q(op, profile);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      const Bus& bus = net.buses[i];
      double out_p = 0.0, out_q = 0.0;
      for (int l : topo.outgoing[i]) {
        out_p += op.p(t, l);
        out_q += op.q(t, l);
      }
      for (int l : topo.incoming[i]) {
        out_p -= op.p(t, l);
        out_q -= op.q(t, l);
      }
      note("active_balance", std::abs(out_p - dp(t, i)));
      note("reactive_balance", std::abs(out_q - dq(t, i)));
      for (const Matrix* m : {&op.pg, &op.pv, &op.ch, &op.ds, &op.soc, &op.v}) {
        note("sign", below((*m)(t, i), 0.0));
      }
      note("pg_max", above(op.pg(t, i), bus.pg_max));
      note("qg_bounds", below(op.qg(t, i), bus.qg_min));
      note("qg_bounds", above(op.qg(t, i), bus.qg_max));
      note("v_bounds", below(op.v(t, i), vmin(c, i)));
      note("v_bounds", above(op.v(t, i), vmax(c, i)));
      note("theta_bounds", below(op.theta(t, i), thmin(c, i)));
      note("theta_bounds", above(op.theta(t, i), thmax(c, i)));
      note("pv_available", above(op.pv(t, i), profile.pv[t] * inv.gamma_pv[i]));
      const double prev = t == 0 ? tp.soc_init * inv.gamma_bt[i] : op.soc(t - 1, i);
      const double expected = prev + (tp.eff_charge * op.ch(t, i) -
                                      op.ds(t, i) / tp.eff_discharge) *
                                         tp.dt;
      note("soc_dynamics", std::abs(op.soc(t, i) - expected));
      note("soc_bounds", below(op.soc(t, i), tp.soc_min * inv.gamma_bt[i]));
      note("soc_bounds", above(op.soc(t, i), tp.soc_max * inv.gamma_bt[i]));
      note("binary", binary(op.w(t, i)));
      note("charge_limit", above(op.ch(t, i), tp.pb * op.w(t, i)));
      note("discharge_limit",
           above(op.ds(t, i),
                 tp.pb * (1.0 - op.w(t, i)) - tp.pb * (1.0 - inv.nu_bt[i])));
      note("w_link", above(op.w(t, i), inv.nu_bt[i]));
    }
    for (int l = 0; l < net.num_lines(); ++l) {
      const Line& line = net.lines[l];
      const int f = topo.from[l];
      const int to = topo.to[l];
      const double r = line.r / net.base_kva;
      const double x = line.x / net.base_kva;
      note("voltage_drop",
           std::abs(op.v(t, to) -
                    (op.v(t, f) - 2.0 * (r * op.p(t, l) + x * op.q(t, l)))));
      note("angle", std::abs(op.theta(t, f) - op.theta(t, to) -
                             (x * op.p(t, l) - r * op.q(t, l))));
      for (const PolygonCut& cut : cuts) {
        note("line_capacity", above(cut.a * op.p(t, l) + cut.b * op.q(t, l) +
                                        cut.c * line.s_max,
                                    0.0));
      }
    }
  }
  return rep;
}

void require_optimal(const SolveResult& r, const std::string& what) {
  if (!r.optimal()) {
    throw SolverError(what + " ended with status " + to_string(r.status));
  }
}

PlanSolution solve_deterministic(const CaseData& c,
                                 const OperatingProfile& profile,
                                 const SolverParams& params) {
  DeterministicModel m = build_deterministic(c, profile);
  const SolveResult r = solve(m.model, params);
  require_optimal(r, "deterministic model");
  PlanSolution sol;
  sol.formulation = "det";
  sol.investment = extract_investment(r, m.inv);
  sol.operations.push_back(extract_operation(r, m.op, m.w));
  sol.profiles.push_back(profile);
  sol.weights.push_back(1.0);
  sol.investment_cost = investment_cost(c, sol.investment);
  sol.operational_cost = operational_cost(c, sol.operations[0], profile);
  sol.objective = r.objective;
  sol.solve_time_s = r.solve_time_s;
  return sol;
}

PlanSolution evaluate_plan(const CaseData& c, const InvestmentValues& inv,
                           const OperatingProfile& profile,
                           const SolverParams& params) {
  DeterministicModel m = build_deterministic(c, profile);
  std::map<VarRef, double> fix;
  for (int i = 0; i < c.network.num_buses(); ++i) {
    fix[m.inv.nu_pv[i]] = inv.nu_pv[i];
    fix[m.inv.nu_bt[i]] = inv.nu_bt[i];
    fix[m.inv.gamma_pv[i]] = inv.gamma_pv[i];
    fix[m.inv.gamma_bt[i]] = inv.gamma_bt[i];
  }
  const SolveResult r = solve(fix_variables(m.model, fix), params);
  require_optimal(r, "plan evaluation");
  PlanSolution sol;
  sol.formulation = "evaluate";
  sol.investment = inv;
  sol.operations.push_back(extract_operation(r, m.op, m.w));
  sol.profiles.push_back(profile);
  sol.weights.push_back(1.0);
  sol.investment_cost = investment_cost(c, inv);
  sol.operational_cost = operational_cost(c, sol.operations[0], profile);
  sol.objective = sol.investment_cost + sol.operational_cost;
  sol.solve_time_s = r.solve_time_s;
  return sol;
}

}  // namespace derplan
