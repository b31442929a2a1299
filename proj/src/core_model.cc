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

#include "derplan/core_model.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace derplan {

int Network::bus_index(const std::string& id) const {
  for (int i = 0; i < num_buses(); ++i) {
    if (buses[i].id == id) return i;
  }
  throw std::invalid_argument("unknown bus id '" + id + "'");
}

Topology Topology::of(const Network& network) {
  Topology topo;
  const int n = network.num_buses();
  topo.outgoing.resize(n);
  topo.incoming.resize(n);
  for (int l = 0; l < network.num_lines(); ++l) {
    const int f = network.bus_index(network.lines[l].from);
    const int t = network.bus_index(network.lines[l].to);
    topo.from.push_back(f);
    topo.to.push_back(t);
    topo.outgoing[f].push_back(l);
    topo.incoming[t].push_back(l);
  }
  topo.substation = network.substation_index();
  return topo;
}

OperatingProfile with_realization(OperatingProfile base, const Realization& r) {
  if (static_cast<int>(r.pv.size()) != base.horizon() ||
      r.pl.rows() != base.pl.rows() || r.pl.cols() != base.pl.cols()) {
    throw std::invalid_argument("realization does not match the profile shape");
  }
  base.pv = r.pv;
  base.pl = r.pl;
  return base;
}

OperatingProfile scenario_profile(const CaseData& c, int scenario) {
  const int T = c.horizon();
  OperatingProfile prof;
  prof.pv.resize(T);
  prof.price.resize(T);
  for (int t = 0; t < T; ++t) {
    prof.pv[t] = c.pv_profile.pv(t, scenario);
    prof.price[t] = c.costs.price(t, scenario);
  }
  prof.pl = c.loads.pl.at(scenario);
  prof.ql = c.loads.ql.at(scenario);
  return prof;
}

OperatingProfile expected_profile(const CaseData& c) {
  const int T = c.horizon();
  const int B = c.network.num_buses();
  OperatingProfile prof;
  prof.pv.assign(T, 0.0);
  prof.price.assign(T, 0.0);
  prof.pl = Matrix(T, B);
  prof.ql = Matrix(T, B);
  for (int s = 0; s < c.num_scenarios(); ++s) {
    const double rho = c.probabilities[s];
    for (int t = 0; t < T; ++t) {
      prof.pv[t] += rho * c.pv_profile.pv(t, s);
      prof.price[t] += rho * c.costs.price(t, s);
      for (int i = 0; i < B; ++i) {
        prof.pl(t, i) += rho * c.loads.pl[s](t, i);
        prof.ql(t, i) += rho * c.loads.ql[s](t, i);
      }
    }
  }
  return prof;
}

OperatingProfile nominal_profile(const CaseData& c) {
  OperatingProfile prof = expected_profile(c);
  prof.pv = c.envelope.pv_bar;
  prof.pl = c.envelope.pl_bar;
  return prof;
}

OperatingProfile concatenated_profile(const CaseData& c) {
  const int T = c.horizon();
  const int S = c.num_scenarios();
  const int B = c.network.num_buses();
  OperatingProfile prof;
  prof.pl = Matrix(T * S, B);
  prof.ql = Matrix(T * S, B);
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      prof.pv.push_back(c.pv_profile.pv(t, s));
      prof.price.push_back(c.costs.price(t, s));
      for (int i = 0; i < B; ++i) {
        prof.pl(s * T + t, i) = c.loads.pl[s](t, i);
        prof.ql(s * T + t, i) = c.loads.ql[s](t, i);
      }
    }
  }
  return prof;
}

namespace {

void check_radial(const Network& net, std::vector<std::string>& out) {
  const int n = net.num_buses();
  std::set<std::string> ids;
  for (const Bus& b : net.buses) {
    if (!ids.insert(b.id).second) out.push_back("duplicate bus id " + b.id);
  }
  if (n == 0) {
    out.push_back("network has no buses");
    return;
  }
  if (!ids.contains(net.substation)) {
    out.push_back("substation '" + net.substation + "' is not a bus");
  }
  bool endpoints_ok = true;
  for (const Line& l : net.lines) {
    if (!ids.contains(l.from) || !ids.contains(l.to)) {
      out.push_back("line " + l.from + "-" + l.to + " has an unknown endpoint");
      endpoints_ok = false;
    }
    if (l.from == l.to) out.push_back("line " + l.from + " is a self-loop");
    if (l.r < 0.0 || l.x < 0.0) {
      out.push_back("line " + l.from + "-" + l.to + " has negative impedance");
    }
    if (!(l.s_max > 0.0)) {
      out.push_back("line " + l.from + "-" + l.to + " has s_max <= 0");
    }
  }
  if (net.num_lines() != n - 1) {
    out.push_back("not radial: " + std::to_string(net.num_lines()) +
                  " lines for " + std::to_string(n) + " buses");
    return;
  }
  if (!endpoints_ok) return;
  // Union-find: with n-1 lines, acyclic is equivalent to connected.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const Line& l : net.lines) {
    const int a = find(net.bus_index(l.from));
    const int b = find(net.bus_index(l.to));
    if (a == b) {
      out.push_back("not radial: line " + l.from + "-" + l.to +
                    " closes a cycle");
      return;
    }
    parent[a] = b;
  }
}

void check_dims(const Matrix& m, int rows, int cols, const std::string& what,
                std::vector<std::string>& out) {
  if (m.rows() != rows || m.cols() != cols) {
    out.push_back(what + " is " + std::to_string(m.rows()) + "x" +
                  std::to_string(m.cols()) + ", expected " +
                  std::to_string(rows) + "x" + std::to_string(cols));
  }
}

bool all_nonnegative(const std::vector<double>& v) {
  for (double x : v) {
    if (!(x >= 0.0)) return false;
  }
  return true;
}

}  // namespace

ValidationReport validate_case(const CaseData& c) {
  ValidationReport report;
  auto& out = report.violations;
  const Network& net = c.network;
  check_radial(net, out);

  for (const Bus& b : net.buses) {
    if (!(b.v_min <= b.v_max)) out.push_back("bus " + b.id + ": v_min > v_max");
    if (b.qg_min > b.qg_max) out.push_back("bus " + b.id + ": qg bounds inverted");
    if (b.theta_min > b.theta_max) {
      out.push_back("bus " + b.id + ": theta bounds inverted");
    }
    if (b.pg_max < 0.0) out.push_back("bus " + b.id + ": pg_max < 0");
  }

  const TechParams& tp = c.tech;
  if (!(tp.soc_min < tp.soc_max)) out.push_back("soc bounds inverted");
  if (tp.soc_min < 0.0 || tp.soc_max > 1.0) {
    out.push_back("soc bounds outside [0,1]");
  }
  if (tp.soc_init < tp.soc_min || tp.soc_init > tp.soc_max) {
    out.push_back("soc_init outside [soc_min, soc_max]");
  }
  if (!(tp.eff_charge > 0.0 && tp.eff_charge <= 1.0) ||
      !(tp.eff_discharge > 0.0 && tp.eff_discharge <= 1.0)) {
    out.push_back("efficiencies must lie in (0,1]");
  }
  if (tp.pv_cap_min > tp.pv_cap_max) out.push_back("pv capacity bounds inverted");
  if (tp.bt_cap_min > tp.bt_cap_max) out.push_back("bt capacity bounds inverted");
  if (tp.pv_cap_min < 0.0 || tp.bt_cap_min < 0.0) {
    out.push_back("capacity bounds negative");
  }
  if (tp.n_pv_max < 0 || tp.n_bt_max < 0) out.push_back("installation counts negative");
  if (!(tp.pb >= 0.0)) out.push_back("pb negative");
  if (!(tp.dt > 0.0)) out.push_back("dt must be positive");
  if (!(net.base_kva > 0.0)) out.push_back("base_kva must be positive");
  if (c.polygon_segments < 4) out.push_back("polygon_segments < 4");

  const int B = net.num_buses();
  const int T = c.horizon();
  const int S = c.num_scenarios();
  const CostParams& cp = c.costs;
  for (const auto* v : {&cp.c_pv, &cp.c_bt, &cp.i_pv, &cp.i_bt}) {
    if (static_cast<int>(v->size()) != B) {
      out.push_back("per-bus cost vector has " + std::to_string(v->size()) +
                    " entries, expected " + std::to_string(B));
    } else if (!all_nonnegative(*v)) {
      out.push_back("negative investment cost");
    }
  }
  if (cp.oc_pv < 0.0 || cp.oc_bt < 0.0) out.push_back("negative operational cost");

  if (S == 0) out.push_back("no scenarios");
  double total = 0.0;
  for (double p : c.probabilities) {
    if (!(p > 0.0)) out.push_back("scenario probability must be > 0");
    total += p;
  }
  if (S > 0 && std::abs(total - 1.0) > 1e-9) {
    out.push_back("scenario probabilities sum to " + std::to_string(total));
  }
  if (T == 0) out.push_back("empty horizon");
  check_dims(c.pv_profile.pv, T, S, "pv profile", out);
  check_dims(cp.price, T, S, "price matrix", out);
  for (double x : cp.price.data()) {
    if (x < 0.0) {
      out.push_back("negative grid price");
      break;
    }
  }
  for (double x : c.pv_profile.pv.data()) {
    if (x < 0.0 || x > 1.0) {
      out.push_back("pv availability outside [0,1]");
      break;
    }
  }
  if (static_cast<int>(c.loads.pl.size()) != S ||
      static_cast<int>(c.loads.ql.size()) != S) {
    out.push_back("load profiles do not match scenario count");
  } else {
    for (int s = 0; s < S; ++s) {
      check_dims(c.loads.pl[s], T, B, "pl[" + std::to_string(s) + "]", out);
      check_dims(c.loads.ql[s], T, B, "ql[" + std::to_string(s) + "]", out);
      for (double x : c.loads.pl[s].data()) {
        if (x < 0.0) {
          out.push_back("negative active load");
          break;
        }
      }
    }
  }

  const UncertaintyEnvelope& env = c.envelope;
  if (static_cast<int>(env.pv_bar.size()) != T ||
      static_cast<int>(env.pv_hat.size()) != T) {
    out.push_back("uncertainty envelope pv does not match horizon");
  } else {
    for (int t = 0; t < T; ++t) {
      if (env.pv_hat[t] < 0.0 || env.pv_bar[t] - env.pv_hat[t] < -1e-12 ||
          env.pv_bar[t] + env.pv_hat[t] > 1.0 + 1e-12) {
        out.push_back("pv envelope leaves [0,1] at slot " + std::to_string(t));
        break;
      }
    }
  }
  check_dims(env.pl_bar, T, B, "pl_bar", out);
  check_dims(env.pl_hat, T, B, "pl_hat", out);
  if (env.pl_bar.rows() == T && env.pl_bar.cols() == B &&
      env.pl_hat.rows() == T && env.pl_hat.cols() == B) {
    for (int t = 0; t < T; ++t) {
      for (int i = 0; i < B; ++i) {
        if (env.pl_hat(t, i) < 0.0 ||
            env.pl_bar(t, i) - env.pl_hat(t, i) < -1e-12) {
          out.push_back("load envelope goes negative at bus " +
                        net.buses[i].id);
          t = T;
          break;
        }
      }
    }
  }
  return report;
}

std::vector<PolygonCut> polygon_coefficients(int n_segments) {
  if (n_segments < 4) {
    throw std::invalid_argument("polygon_coefficients needs n >= 4, got " +
                                std::to_string(n_segments));
  }
  std::vector<PolygonCut> cuts;
  cuts.reserve(n_segments);
  for (int r = 0; r < n_segments; ++r) {
    const double angle = 2.0 * std::numbers::pi * r / n_segments;
    PolygonCut cut{std::cos(angle), std::sin(angle), -1.0};
    // Snap the axis-aligned directions so n=4 yields exact unit cuts.
    if (std::abs(cut.a) < 1e-15) cut.a = 0.0;
    if (std::abs(cut.b) < 1e-15) cut.b = 0.0;
    cuts.push_back(cut);
  }
  return cuts;
}

}  // namespace derplan
