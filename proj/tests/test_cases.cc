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

#include "test_cases.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "derplan/case_io.h"
#include "derplan/uncertainty.h"

namespace derplan::testing {
namespace {

Bus substation_bus() {
  Bus b;
  b.id = "b0";
  b.pg_max = 1000.0;
  b.qg_min = -1000.0;
  b.qg_max = 1000.0;
  b.v_min = 1.0;
  b.v_max = 1.0;
  b.pv_allowed = false;
  b.bess_allowed = false;
  return b;
}

void fill_costs(CaseData& c, double c_pv, double c_bt, double i_pv,
                double i_bt) {
  const int B = c.network.num_buses();
  c.costs.c_pv.assign(B, c_pv);
  c.costs.c_bt.assign(B, c_bt);
  c.costs.i_pv.assign(B, i_pv);
  c.costs.i_bt.assign(B, i_bt);
}

// Envelope from the weighted scenario spread, load hat as a fraction of bar.
void fill_envelope(CaseData& c, double load_fraction) {
  const int T = c.horizon();
  const int B = c.network.num_buses();
  const int S = c.num_scenarios();
  const Envelope pv = envelope_from_range(c.pv_profile.pv, c.probabilities);
  c.envelope.pv_bar = pv.bar;
  c.envelope.pv_hat = pv.hat;
  for (int t = 0; t < T; ++t) {
    c.envelope.pv_hat[t] = std::min(
        {c.envelope.pv_hat[t], pv.bar[t], 1.0 - pv.bar[t]});
  }
  c.envelope.pl_bar = Matrix(T, B);
  c.envelope.pl_hat = Matrix(T, B);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < B; ++i) {
      double bar = 0.0;
      for (int s = 0; s < S; ++s) bar += c.probabilities[s] * c.loads.pl[s](t, i);
      c.envelope.pl_bar(t, i) = bar;
      c.envelope.pl_hat(t, i) = load_fraction * bar;
    }
  }
}

}  // namespace

CaseData toy_case() {
  CaseData c;
  c.name = "toy";
  c.polygon_segments = 8;
  c.network.substation = "b0";
  c.network.buses = {substation_bus(), Bus{}, Bus{}};
  c.network.buses[1].id = "b1";
  c.network.buses[2].id = "b2";
  c.network.lines = {{"b0", "b1", 0.02, 0.015, 1000.0},
                     {"b1", "b2", 0.03, 0.02, 1000.0}};
  c.tech.pb = 40.0;
  c.tech.pv_cap_min = 5.0;
  c.tech.pv_cap_max = 300.0;
  c.tech.bt_cap_min = 5.0;
  c.tech.bt_cap_max = 200.0;
  c.tech.n_pv_max = 2;
  c.tech.n_bt_max = 1;
  c.probabilities = {0.6, 0.4};
  const int T = 4;
  c.pv_profile.pv = Matrix(T, 2);
  const double pv[2][T] = {{0.0, 0.7, 0.8, 0.1}, {0.0, 0.3, 0.4, 0.0}};
  const double price[2][T] = {{0.10, 0.20, 0.20, 0.30}, {0.11, 0.21, 0.19, 0.32}};
  const double load[2][T] = {{40, 60, 70, 90}, {44, 62, 68, 96}};
  c.costs.price = Matrix(T, 2);
  for (int s = 0; s < 2; ++s) {
    Matrix pl(T, 3), ql(T, 3);
    for (int t = 0; t < T; ++t) {
      c.pv_profile.pv(t, s) = pv[s][t];
      c.costs.price(t, s) = price[s][t];
      pl(t, 1) = load[s][t];
      pl(t, 2) = 0.5 * load[s][t];
      ql(t, 1) = 0.3 * pl(t, 1);
      ql(t, 2) = 0.3 * pl(t, 2);
    }
    c.loads.pl.push_back(pl);
    c.loads.ql.push_back(ql);
  }
  fill_costs(c, 0.05, 0.04, 1.0, 1.0);
  c.costs.oc_pv = 0.002;
  c.costs.oc_bt = 0.004;
  fill_envelope(c, 0.2);
  return c;
}

CaseData random_case(uint32_t seed, int buses, int slots, int scenarios) {
  if (buses < 2 || slots < 1 || scenarios < 1) {
    throw std::invalid_argument("random_case: need >= 2 buses");
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CaseData c;
  c.name = "random" + std::to_string(seed);
  c.polygon_segments = 4 + static_cast<int>(u(rng) * 8);
  c.network.substation = "b0";
  c.network.buses.push_back(substation_bus());
  for (int i = 1; i < buses; ++i) {
    Bus b;
    b.id = "b" + std::to_string(i);
    b.pv_allowed = u(rng) < 0.8;
    b.bess_allowed = u(rng) < 0.7;
    c.network.buses.push_back(b);
    const int parent = static_cast<int>(u(rng) * i);
    c.network.lines.push_back({"b" + std::to_string(parent), b.id,
                               0.01 + 0.03 * u(rng), 0.01 + 0.02 * u(rng),
                               400.0 + 600.0 * u(rng)});
  }
  c.tech.pb = 20.0 + 60.0 * u(rng);
  c.tech.soc_init = 0.3 + 0.4 * u(rng);
  c.tech.eff_charge = 0.85 + 0.14 * u(rng);
  c.tech.eff_discharge = 0.85 + 0.14 * u(rng);
  c.tech.pv_cap_min = 5.0;
  c.tech.pv_cap_max = 200.0 + 200.0 * u(rng);
  c.tech.bt_cap_min = 5.0;
  c.tech.bt_cap_max = 100.0 + 200.0 * u(rng);
  c.tech.n_pv_max = 1 + static_cast<int>(u(rng) * 2);
  c.tech.n_bt_max = 1;

  c.probabilities.assign(scenarios, 0.0);
  double total = 0.0;
  for (double& p : c.probabilities) total += (p = 0.5 + u(rng));
  for (double& p : c.probabilities) p /= total;
  c.pv_profile.pv = Matrix(slots, scenarios);
  c.costs.price = Matrix(slots, scenarios);
  for (int s = 0; s < scenarios; ++s) {
    Matrix pl(slots, buses), ql(slots, buses);
    for (int t = 0; t < slots; ++t) {
      c.pv_profile.pv(t, s) = u(rng) < 0.2 ? 0.0 : 0.9 * u(rng);
      c.costs.price(t, s) = 0.05 + 0.3 * u(rng);
      for (int i = 1; i < buses; ++i) {
        pl(t, i) = u(rng) < 0.25 ? 0.0 : 10.0 + 90.0 * u(rng);
        ql(t, i) = 0.3 * pl(t, i);
      }
    }
    c.loads.pl.push_back(pl);
    c.loads.ql.push_back(ql);
  }
  fill_costs(c, 0.02 + 0.1 * u(rng), 0.02 + 0.1 * u(rng), 0.5 * u(rng),
             0.5 * u(rng));
  c.costs.oc_pv = 0.01 * u(rng);
  c.costs.oc_bt = 0.01 * u(rng);
  fill_envelope(c, 0.1 + 0.3 * u(rng));
  // Some deviations stay at zero so the enumeration sees idle entries.
  if (slots > 1) c.envelope.pl_hat(0, buses - 1) = 0.0;
  const ValidationReport report = validate_case(c);
  if (!report.ok()) {
    throw std::logic_error("random_case produced an invalid case: " +
                           report.violations.front());
  }
  return c;
}

std::string source_path(const std::string& relative) {
  return std::string(DERPLAN_SOURCE_DIR) + "/" + relative;
}

CaseData bundled_case(const std::string& file) {
  return load_case(source_path("cases/" + file));
}

}  // namespace derplan::testing
