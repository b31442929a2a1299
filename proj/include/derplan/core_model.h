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

// Domain types for PV / battery planning on a radial distribution network.
//
// Units follow the case file: power in kW (kvar for reactive), energy in kWh,
// voltages as squared per-unit magnitudes, angles in radians, costs in the
// case currency. Time-indexed data is stored slot-major.

#ifndef DERPLAN_CORE_MODEL_H_
#define DERPLAN_CORE_MODEL_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace derplan {

// Dense row-major matrix.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(int r, int c) { return data_[index(r, c)]; }
  const T& operator()(int r, int c) const { return data_[index(r, c)]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static size_t checked_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative Grid size");
    return static_cast<size_t>(rows) * cols;
  }

  size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
      throw std::out_of_range("Grid index (" + std::to_string(r) + "," +
                              std::to_string(c) + ") outside " +
                              std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
    return static_cast<size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using Matrix = Grid<double>;

struct Bus {
  std::string id;
  double pg_max = 0.0;  // kW; non-zero only at the substation
  double qg_min = 0.0;  // kvar
  double qg_max = 0.0;
  double v_min = 0.81;  // squared p.u.
  double v_max = 1.21;
  double theta_min = -0.5236;  // rad
  double theta_max = 0.5236;
  bool pv_allowed = true;
  bool bess_allowed = true;
};

struct Line {
  std::string from;
  std::string to;
  double r = 0.0;      // p.u.
  double x = 0.0;      // p.u.
  double s_max = 0.0;  // kVA
};

struct Network {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::string substation;
  // Power base turning per-unit impedances into coefficients on kW flows.
  double base_kva = 1000.0;

  int num_buses() const { return static_cast<int>(buses.size()); }
  int num_lines() const { return static_cast<int>(lines.size()); }
  // Index of a bus id; throws std::invalid_argument when absent.
  int bus_index(const std::string& id) const;
  int substation_index() const { return bus_index(substation); }
};

// Line endpoints resolved to bus indices, plus per-bus incidence lists.
struct Topology {
  std::vector<int> from;
  std::vector<int> to;
  std::vector<std::vector<int>> outgoing;  // lines with from == bus
  std::vector<std::vector<int>> incoming;  // lines with to == bus
  int substation = 0;

  static Topology of(const Network& network);
};

struct TechParams {
  double soc_min = 0.1;  // fraction of installed kWh
  double soc_max = 0.9;
  double soc_init = 0.5;
  double eff_charge = 0.95;
  double eff_discharge = 0.95;
  double pb = 100.0;  // kW charge/discharge limit
  double pv_cap_min = 0.0;
  double pv_cap_max = 1000.0;  // kW
  double bt_cap_min = 0.0;
  double bt_cap_max = 1000.0;  // kWh
  int n_pv_max = 1;
  int n_bt_max = 1;
  double dt = 1.0;  // hours per slot
};

struct CostParams {
  // Per-bus marginal capacity cost and fixed installation cost.
  std::vector<double> c_pv, c_bt, i_pv, i_bt;
  double oc_pv = 0.0;  // per kWh
  double oc_bt = 0.0;
  Matrix price;  // slots x scenarios, per kWh
};

// Active and reactive loads, one slots x buses matrix per scenario.
struct LoadProfile {
  std::vector<Matrix> pl;
  std::vector<Matrix> ql;
};

// Normalized PV availability in [0,1], slots x scenarios.
struct PvProfile {
  Matrix pv;
};

// Nominal value and maximum deviation of the uncertain data. Filled at load
// time from either explicit arrays, scenario spreads or PV history.
struct UncertaintyEnvelope {
  std::vector<double> pv_bar, pv_hat;  // per slot
  Matrix pl_bar, pl_hat;               // slots x buses
};

struct CaseData {
  std::string name = "case";
  std::string currency = "EUR";
  std::string power_unit = "kW";
  Network network;
  TechParams tech;
  CostParams costs;
  LoadProfile loads;
  PvProfile pv_profile;
  std::vector<double> probabilities;
  UncertaintyEnvelope envelope;
  int polygon_segments = 12;

  int horizon() const { return pv_profile.pv.rows(); }
  int num_scenarios() const { return static_cast<int>(probabilities.size()); }
};

// Data of one operating horizon: what a single operational block sees.
struct OperatingProfile {
  std::vector<double> pv;     // per slot, normalized
  Matrix pl;                  // slots x buses
  Matrix ql;                  // slots x buses
  std::vector<double> price;  // per slot

  int horizon() const { return static_cast<int>(pv.size()); }
};

// Values taken by the uncertain data: normalized PV per slot and active load
// per slot and bus.
struct Realization {
  std::vector<double> pv;
  Matrix pl;

  friend bool operator==(const Realization&, const Realization&) = default;
};

// `base` with its PV and active load replaced by the realization.
OperatingProfile with_realization(OperatingProfile base, const Realization& r);

OperatingProfile scenario_profile(const CaseData& c, int scenario);
// Probability-weighted mean of every scenario series.
OperatingProfile expected_profile(const CaseData& c);
// Expected reactive load and prices with the envelope's nominal PV and load.
OperatingProfile nominal_profile(const CaseData& c);
// Scenarios concatenated in order into one |S| * T horizon.
OperatingProfile concatenated_profile(const CaseData& c);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Collects every violation instead of stopping at the first.
ValidationReport validate_case(const CaseData& c);

// Line capacity cut  a*p + b*q + c*S_max <= 0.
struct PolygonCut {
  double a = 0.0;
  double b = 0.0;
  double c = -1.0;
};

// Regular n-gon circumscribing the disc of radius S_max: a_r = cos(2 pi r/n),
// b_r = sin(2 pi r/n), c_r = -1. Throws std::invalid_argument for n < 4.
std::vector<PolygonCut> polygon_coefficients(int n_segments);

}  // namespace derplan

#endif  // DERPLAN_CORE_MODEL_H_
