#!/usr/bin/env python3
# Copyright 2026 The derplan Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled case files in cases/.

All data is synthetic. Profiles come from closed-form daily shapes so the
output is identical on every run:

    python3 tools/make_cases.py [--out cases]
"""

import argparse
import json
import math
import os

HOURS = 24

# Nine representative days: peak PV availability and a load scale factor.
DAYS = [
    (0.92, 0.96), (0.88, 1.00), (0.80, 1.04),
    (0.70, 0.98), (0.60, 1.02), (0.50, 1.06),
    (0.38, 1.00), (0.25, 1.08), (0.12, 1.04),
]
PROBABILITIES = [0.14, 0.14, 0.12, 0.12, 0.11, 0.11, 0.10, 0.09, 0.07]


def pv_shape(peak):
    """Bell-shaped availability between 6h and 19h."""
    out = []
    for h in range(HOURS):
        x = (h + 0.5 - 12.5) / 6.5
        out.append(round(max(0.0, peak * math.cos(0.5 * math.pi * x)) if abs(x) < 1 else 0.0, 4))
    return out


def load_shape():
    """Residential shape: low at night, morning bump, evening peak."""
    out = []
    for h in range(HOURS):
        morning = 0.25 * math.exp(-((h - 8) / 2.0) ** 2)
        evening = 0.55 * math.exp(-((h - 19) / 2.5) ** 2)
        out.append(0.45 + morning + evening)
    return out


def price_shape(scale):
    out = []
    for h in range(HOURS):
        if h < 7:
            p = 0.12
        elif 17 <= h < 22:
            p = 0.30
        else:
            p = 0.20
        out.append(round(p * scale, 4))
    return out


def five_bus():
    shape = load_shape()
    peaks = {"b3": 120.0, "b4": 90.0, "b5": 150.0}
    buses = ["b1", "b2", "b3", "b4", "b5"]
    pl = []
    for _, scale in DAYS:
        rows = []
        for h in range(HOURS):
            rows.append([round(peaks.get(b, 0.0) * shape[h] * scale, 3) for b in buses])
        pl.append(rows)
    pv = [[row[s] for s in range(len(DAYS))]
          for row in zip(*[pv_shape(peak) for peak, _ in DAYS])]
    price_scales = [0.97, 1.0, 1.0, 1.01, 1.02, 1.0, 1.03, 1.04, 1.05]
    price = [[row[s] for s in range(len(DAYS))]
             for row in zip(*[price_shape(k) for k in price_scales])]
    return {
        "name": "five_bus",
        "currency": "EUR",
        "power_unit": "kW",
        "polygon_segments": 8,
        "network": {
            "base_kva": 1000.0,
            "substation": "b1",
            "bus_defaults": {"v_min": 0.81, "v_max": 1.21,
                             "theta_min": -0.5236, "theta_max": 0.5236},
            "buses": [
                {"id": "b1", "pg_max": 5000.0, "qg_min": -5000.0, "qg_max": 5000.0,
                 "v_min": 1.0, "v_max": 1.0, "pv_allowed": False, "bess_allowed": False},
                {"id": "b2", "bess_allowed": False},
                {"id": "b3"},
                {"id": "b4", "bess_allowed": False},
                {"id": "b5"},
            ],
            "line_defaults": {"r": 0.02, "x": 0.015, "s_max": 2000.0},
            "lines": [
                {"from": "b1", "to": "b2"},
                {"from": "b2", "to": "b3"},
                {"from": "b3", "to": "b4"},
                {"from": "b2", "to": "b5", "r": 0.03, "x": 0.02},
            ],
        },
        "tech": {
            "soc_min": 0.1, "soc_max": 0.9, "soc_init": 0.5,
            "eff_charge": 0.95, "eff_discharge": 0.95, "pb": 80.0,
            "pv_cap_min": 20.0, "pv_cap_max": 600.0,
            "bt_cap_min": 20.0, "bt_cap_max": 500.0,
            "n_pv_max": 2, "n_bt_max": 1, "dt": 1.0,
        },
        "scenarios": {"probabilities": PROBABILITIES},
        "pv": {"profile": pv},
        "loads": {"pl": {"per_scenario": pl}, "q_over_p": 0.3},
        "costs": {
            "c_pv": 0.11, "c_bt": 0.08, "i_pv": 4.0, "i_bt": 3.0,
            "oc_pv": 0.005, "oc_bt": 0.01, "price": price,
        },
        "uncertainty": {
            "pv": {"method": "scenario_range"},
            "pl": {"method": "relative", "fraction": 0.2,
                   "uncertain_buses": ["b5"]},
        },
    }


# Branch data of the public 33-bus feeder (from, to, r ohm, x ohm).
IEEE33_LINES = [
    (1, 2, 0.0922, 0.0470), (2, 3, 0.4930, 0.2511), (3, 4, 0.3660, 0.1864),
    (4, 5, 0.3811, 0.1941), (5, 6, 0.8190, 0.7070), (6, 7, 0.1872, 0.6188),
    (7, 8, 0.7114, 0.2351), (8, 9, 1.0300, 0.7400), (9, 10, 1.0440, 0.7400),
    (10, 11, 0.1966, 0.0650), (11, 12, 0.3744, 0.1238), (12, 13, 1.4680, 1.1550),
    (13, 14, 0.5416, 0.7129), (14, 15, 0.5910, 0.5260), (15, 16, 0.7463, 0.5450),
    (16, 17, 1.2890, 1.7210), (17, 18, 0.7320, 0.5740), (2, 19, 0.1640, 0.1565),
    (19, 20, 1.5042, 1.3554), (20, 21, 0.4095, 0.4784), (21, 22, 0.7089, 0.9373),
    (3, 23, 0.4512, 0.3083), (23, 24, 0.8980, 0.7091), (24, 25, 0.8960, 0.7011),
    (6, 26, 0.2030, 0.1034), (26, 27, 0.2842, 0.1447), (27, 28, 1.0590, 0.9337),
    (28, 29, 0.8042, 0.7006), (29, 30, 0.5075, 0.2585), (30, 31, 0.9744, 0.9630),
    (31, 32, 0.3105, 0.3619), (32, 33, 0.3410, 0.5302),
]

# Peak active load per bus (kW) of the same feeder.
IEEE33_PEAK = [0, 100, 90, 120, 60, 60, 200, 200, 60, 60, 45, 60, 60, 120, 60,
               60, 60, 90, 90, 90, 90, 90, 90, 420, 420, 60, 60, 60, 120, 200,
               150, 210, 60]


def ieee33_template():
    base_kv = 12.66
    base_kva = 10000.0
    z_base = base_kv ** 2 * 1000.0 / base_kva
    shape = load_shape()
    pl = []
    for _, scale in DAYS:
        pl.append([[round(p * shape[h] * scale, 3) for p in IEEE33_PEAK]
                   for h in range(HOURS)])
    pv = [[row[s] for s in range(len(DAYS))]
          for row in zip(*[pv_shape(peak) for peak, _ in DAYS])]
    price = [[v] for v in price_shape(1.0)]
    buses = [{"id": str(i)} for i in range(1, 34)]
    buses[0].update({"pg_max": 10000.0, "qg_min": -10000.0, "qg_max": 10000.0,
                     "v_min": 1.0, "v_max": 1.0,
                     "pv_allowed": False, "bess_allowed": False})
    lines = [{"from": str(a), "to": str(b), "r": round(r / z_base, 6),
              "x": round(x / z_base, 6)} for a, b, r, x in IEEE33_LINES]
    return {
        "name": "ieee33_template",
        "currency": "EUR",
        "power_unit": "kW",
        "polygon_segments": 12,
        "network": {
            "base_kva": base_kva,
            "substation": "1",
            "bus_defaults": {"v_min": 0.81, "v_max": 1.21},
            "buses": buses,
            "line_defaults": {"s_max": 6000.0},
            "lines": lines,
        },
        "tech": {
            "soc_min": 0.1, "soc_max": 0.9, "soc_init": 0.5,
            "eff_charge": 0.95, "eff_discharge": 0.95, "pb": 500.0,
            "pv_cap_min": 50.0, "pv_cap_max": 2000.0,
            "bt_cap_min": 50.0, "bt_cap_max": 2000.0,
            "n_pv_max": 3, "n_bt_max": 2, "dt": 1.0,
        },
        "scenarios": {"probabilities": PROBABILITIES},
        "pv": {"profile": pv},
        "loads": {"pl": {"per_scenario": pl}, "q_over_p": 0.6},
        "costs": {
            "c_pv": 0.11, "c_bt": 0.08, "i_pv": 10.0, "i_bt": 8.0,
            "oc_pv": 0.005, "oc_bt": 0.01, "price": price,
        },
        "uncertainty": {
            "pv": {"method": "scenario_range"},
            "pl": {"method": "relative", "fraction": 0.15},
        },
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "cases"))
    args = parser.parse_args()
    for name, case in (("five_bus.json", five_bus()),
                       ("templates/ieee33_template.json", ieee33_template())):
        path = os.path.join(args.out, name)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as f:
            json.dump(case, f, indent=1)
            f.write("\n")


if __name__ == "__main__":
    main()
