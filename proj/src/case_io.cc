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

#include "derplan/case_io.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "derplan/uncertainty.h"
#include "json.hpp"

namespace derplan {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string join_path(const std::string& base, const std::string& rel) {
  const fs::path p(rel);
  return p.is_absolute() ? rel : (fs::path(base) / p).string();
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    if (cell.empty()) return false;
    size_t used = 0;
    try {
      out.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      return false;
    }
    if (used != cell.size()) return false;
  }
  return !out.empty();
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows,
                      const std::string& what) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw std::invalid_argument(what + ": ragged rows");
    }
    for (size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
  }
  return m;
}

// A matrix given inline as rows, or as {"csv": path}.
Matrix read_matrix(const json& j, const std::string& base,
                   const std::string& what) {
  if (j.is_object()) {
    if (!j.contains("csv")) {
      throw std::invalid_argument(what + ": expected rows or {\"csv\": path}");
    }
    return read_csv_matrix(join_path(base, j.at("csv").get<std::string>()));
  }
  if (!j.is_array()) throw std::invalid_argument(what + ": expected an array");
  std::vector<std::vector<double>> rows;
  for (const json& row : j) {
    if (row.is_array()) {
      rows.push_back(row.get<std::vector<double>>());
    } else {
      rows.push_back({row.get<double>()});
    }
  }
  return rows_to_matrix(rows, what);
}

std::vector<double> per_bus(const json& j, int buses, const std::string& what) {
  if (j.is_number()) return std::vector<double>(buses, j.get<double>());
  std::vector<double> v = j.get<std::vector<double>>();
  if (static_cast<int>(v.size()) != buses) {
    throw std::invalid_argument(what + ": expected " + std::to_string(buses) +
                                " per-bus values");
  }
  return v;
}

// Series that is either one column shared by every scenario or one column per
// scenario.
Matrix per_scenario(const Matrix& m, int scenarios, const std::string& what) {
  if (m.cols() == scenarios) return m;
  if (m.cols() != 1) {
    throw std::invalid_argument(what + ": expected 1 or " +
                                std::to_string(scenarios) + " columns");
  }
  Matrix out(m.rows(), scenarios);
  for (int t = 0; t < m.rows(); ++t) {
    for (int s = 0; s < scenarios; ++s) out(t, s) = m(t, 0);
  }
  return out;
}

std::vector<Matrix> load_matrices(const json& j, int scenarios,
                                  const std::string& base,
                                  const std::string& what) {
  std::vector<Matrix> out;
  if (j.is_object() && j.contains("per_scenario")) {
    for (const json& m : j.at("per_scenario")) {
      out.push_back(read_matrix(m, base, what));
    }
  } else {
    out.assign(scenarios, read_matrix(j, base, what));
  }
  if (static_cast<int>(out.size()) != scenarios) {
    throw std::invalid_argument(what + ": expected " +
                                std::to_string(scenarios) + " matrices");
  }
  return out;
}

void read_bus(const json& j, Bus& b) {
  b.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                 : std::to_string(j.at("id").get<long>());
  b.pg_max = j.value("pg_max", b.pg_max);
  b.qg_min = j.value("qg_min", b.qg_min);
  b.qg_max = j.value("qg_max", b.qg_max);
  b.v_min = j.value("v_min", b.v_min);
  b.v_max = j.value("v_max", b.v_max);
  b.theta_min = j.value("theta_min", b.theta_min);
  b.theta_max = j.value("theta_max", b.theta_max);
  b.pv_allowed = j.value("pv_allowed", b.pv_allowed);
  b.bess_allowed = j.value("bess_allowed", b.bess_allowed);
}

std::string id_of(const json& j) {
  return j.is_string() ? j.get<std::string>() : std::to_string(j.get<long>());
}

Network read_network(const json& j) {
  Network net;
  net.base_kva = j.value("base_kva", net.base_kva);
  net.substation = id_of(j.at("substation"));
  Bus defaults;
  defaults.pv_allowed = true;
  defaults.bess_allowed = true;
  if (j.contains("bus_defaults")) {
    json d = j.at("bus_defaults");
    d["id"] = "";
    read_bus(d, defaults);
  }
  for (const json& jb : j.at("buses")) {
    Bus b = defaults;
    read_bus(jb, b);
    net.buses.push_back(b);
  }
  double r = 0.0, x = 0.0, s_max = 0.0;
  if (j.contains("line_defaults")) {
    const json& d = j.at("line_defaults");
    r = d.value("r", r);
    x = d.value("x", x);
    s_max = d.value("s_max", s_max);
  }
  for (const json& jl : j.at("lines")) {
    Line l;
    l.from = id_of(jl.at("from"));
    l.to = id_of(jl.at("to"));
    l.r = jl.value("r", r);
    l.x = jl.value("x", x);
    l.s_max = jl.value("s_max", s_max);
    net.lines.push_back(l);
  }
  return net;
}

TechParams read_tech(const json& j) {
  TechParams tp;
  tp.soc_min = j.value("soc_min", tp.soc_min);
  tp.soc_max = j.value("soc_max", tp.soc_max);
  tp.soc_init = j.value("soc_init", tp.soc_init);
  tp.eff_charge = j.value("eff_charge", tp.eff_charge);
  tp.eff_discharge = j.value("eff_discharge", tp.eff_discharge);
  tp.pb = j.value("pb", tp.pb);
  tp.pv_cap_min = j.value("pv_cap_min", tp.pv_cap_min);
  tp.pv_cap_max = j.value("pv_cap_max", tp.pv_cap_max);
  tp.bt_cap_min = j.value("bt_cap_min", tp.bt_cap_min);
  tp.bt_cap_max = j.value("bt_cap_max", tp.bt_cap_max);
  tp.n_pv_max = j.value("n_pv_max", tp.n_pv_max);
  tp.n_bt_max = j.value("n_bt_max", tp.n_bt_max);
  tp.dt = j.value("dt", tp.dt);
  return tp;
}

void build_envelope(const json& j, const std::string& base, CaseData& c) {
  const int T = c.horizon();
  const int B = c.network.num_buses();
  const int S = c.num_scenarios();
  UncertaintyEnvelope& env = c.envelope;

  const json pv = j.value("pv", json::object());
  const std::string pv_method = pv.value("method", "scenario_range");
  if (pv_method == "scenario_range") {
    Envelope e = envelope_from_range(c.pv_profile.pv, c.probabilities);
    env.pv_bar = e.bar;
    env.pv_hat = e.hat;
  } else if (pv_method == "history") {
    const Matrix history = read_matrix(pv.at("history"), base, "pv history");
    Envelope e = envelope_from_history(history, pv.value("p_low", 15.0),
                                       pv.value("p_high", 85.0));
    env.pv_bar = e.bar;
    env.pv_hat = e.hat;
  } else if (pv_method == "explicit") {
    env.pv_bar = pv.at("bar").get<std::vector<double>>();
    env.pv_hat = pv.at("hat").get<std::vector<double>>();
  } else {
    throw std::invalid_argument("unknown pv uncertainty method " + pv_method);
  }
  if (static_cast<int>(env.pv_bar.size()) != T ||
      static_cast<int>(env.pv_hat.size()) != T) {
    throw std::invalid_argument("pv envelope does not match the horizon");
  }
  // Keep bar +- hat inside [0, 1].
  for (int t = 0; t < T; ++t) {
    env.pv_hat[t] = std::clamp(
        std::min({env.pv_hat[t], env.pv_bar[t], 1.0 - env.pv_bar[t]}), 0.0, 1.0);
  }

  const json pl = j.value("pl", json::object());
  const std::string pl_method = pl.value("method", "scenario_range");
  env.pl_bar = Matrix(T, B);
  env.pl_hat = Matrix(T, B);
  if (pl_method == "scenario_range" || pl_method == "relative") {
    const double fraction = pl.value("fraction", 0.0);
    for (int i = 0; i < B; ++i) {
      Matrix samples(T, S);
      for (int s = 0; s < S; ++s) {
        for (int t = 0; t < T; ++t) samples(t, s) = c.loads.pl[s](t, i);
      }
      Envelope e = envelope_from_range(samples, c.probabilities);
      for (int t = 0; t < T; ++t) {
        env.pl_bar(t, i) = e.bar[t];
        env.pl_hat(t, i) =
            pl_method == "relative" ? fraction * e.bar[t] : e.hat[t];
      }
    }
  } else if (pl_method == "explicit") {
    env.pl_bar = read_matrix(pl.at("bar"), base, "pl bar");
    env.pl_hat = read_matrix(pl.at("hat"), base, "pl hat");
  } else {
    throw std::invalid_argument("unknown pl uncertainty method " + pl_method);
  }
  if (env.pl_bar.rows() != T || env.pl_bar.cols() != B ||
      env.pl_hat.rows() != T || env.pl_hat.cols() != B) {
    throw std::invalid_argument("load envelope does not match the case");
  }
  if (pl.contains("uncertain_buses")) {
    std::set<int> keep;
    for (const json& id : pl.at("uncertain_buses")) {
      keep.insert(c.network.bus_index(id_of(id)));
    }
    for (int i = 0; i < B; ++i) {
      if (keep.contains(i)) continue;
      for (int t = 0; t < T; ++t) env.pl_hat(t, i) = 0.0;
    }
  }
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      env.pl_hat(t, i) = std::clamp(env.pl_hat(t, i), 0.0, env.pl_bar(t, i));
    }
  }
}

}  // namespace

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> row;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_row(line, row)) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument(path + ": non-numeric row '" + line + "'");
    }
    first = false;
    rows.push_back(row);
  }
  return rows_to_matrix(rows, path);
}

CaseData parse_case(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("case is not valid JSON: ") +
                                e.what());
  }
  CaseData c;
  try {
    c.name = j.value("name", c.name);
    c.currency = j.value("currency", c.currency);
    c.power_unit = j.value("power_unit", c.power_unit);
    c.polygon_segments = j.value("polygon_segments", c.polygon_segments);
    c.network = read_network(j.at("network"));
    c.tech = read_tech(j.value("tech", json::object()));
    const int B = c.network.num_buses();

    const json& sc = j.at("scenarios");
    c.probabilities = sc.at("probabilities").get<std::vector<double>>();
    const int S = c.num_scenarios();

    c.pv_profile.pv =
        per_scenario(read_matrix(j.at("pv").at("profile"), base_dir, "pv"), S,
                     "pv profile");
    const json& loads = j.at("loads");
    c.loads.pl = load_matrices(loads.at("pl"), S, base_dir, "pl");
    if (loads.contains("ql")) {
      c.loads.ql = load_matrices(loads.at("ql"), S, base_dir, "ql");
    } else {
      const double ratio = loads.value("q_over_p", 0.0);
      for (const Matrix& pl : c.loads.pl) {
        Matrix ql(pl.rows(), pl.cols());
        for (int t = 0; t < pl.rows(); ++t) {
          for (int i = 0; i < pl.cols(); ++i) ql(t, i) = ratio * pl(t, i);
        }
        c.loads.ql.push_back(ql);
      }
    }

    const json& costs = j.at("costs");
    c.costs.c_pv = per_bus(costs.at("c_pv"), B, "c_pv");
    c.costs.c_bt = per_bus(costs.at("c_bt"), B, "c_bt");
    c.costs.i_pv = per_bus(costs.at("i_pv"), B, "i_pv");
    c.costs.i_bt = per_bus(costs.at("i_bt"), B, "i_bt");
    c.costs.oc_pv = costs.value("oc_pv", 0.0);
    c.costs.oc_bt = costs.value("oc_bt", 0.0);
    c.costs.price = per_scenario(
        read_matrix(costs.at("price"), base_dir, "price"), S, "price");

    // Dimensions must be right before the envelope can be derived; a zero
    // envelope keeps that first pass from flagging the missing one.
    c.envelope = {std::vector<double>(c.horizon(), 0.0),
                  std::vector<double>(c.horizon(), 0.0),
                  Matrix(c.horizon(), B), Matrix(c.horizon(), B)};
    ValidationReport pre = validate_case(c);
    if (!pre.ok()) {
      std::string msg = "invalid case:";
      for (const std::string& v : pre.violations) msg += "\n  " + v;
      throw std::invalid_argument(msg);
    }
    build_envelope(j.value("uncertainty", json::object()), base_dir, c);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed case: ") + e.what());
  }
  ValidationReport report = validate_case(c);
  if (!report.ok()) {
    std::string msg = "invalid case:";
    for (const std::string& v : report.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return c;
}

CaseData load_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open case file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_case(buf.str(), fs::path(path).parent_path().string());
}

}  // namespace derplan
