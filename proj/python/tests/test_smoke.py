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

import json
import math
import os
import pathlib

import numpy as np
import pytest

import derplan

ROOT = pathlib.Path(os.environ.get(
    "DERPLAN_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
FIVE_BUS = str(ROOT / "cases" / "five_bus.json")


@pytest.fixture(scope="module")
def case():
    return derplan.load_case(FIVE_BUS)


def test_load_case(case):
    assert case.num_buses == 5
    assert case.horizon == 24
    assert case.num_scenarios == 9
    assert derplan.validate_case(case) == []
    assert case.bus_ids[0] == "b1"


def test_bad_case_raises_value_error():
    text = json.loads(pathlib.Path(FIVE_BUS).read_text())
    text["network"]["lines"].append({"from": "b4", "to": "b5"})
    with pytest.raises(ValueError, match="radial"):
        derplan.parse_case(json.dumps(text), str(ROOT / "cases"))


def test_deterministic_split(case):
    r = derplan.solve(case, "det")
    assert r["status"] == "optimal"
    assert math.isclose(r["objective"], r["investment_cost"] + r["operational_cost"],
                        rel_tol=1e-9, abs_tol=1e-6)
    assert math.isclose(sum(r["pv_by_bus"].values()), r["pv_capacity"], rel_tol=1e-9)


def test_aro_zero_budget_matches_deterministic(case):
    det = derplan.solve(case, "det")
    aro = derplan.solve(case, "aro", beta_pl=0, beta_pv=0)
    assert aro["status"] == "converged"
    assert aro["objective"] == pytest.approx(det["objective"], rel=1e-6)
    assert all(t["lb"] <= t["ub"] + 1e-6 for t in aro["trace"])


def test_percentile_matches_numpy():
    rng = np.random.default_rng(3)
    samples = rng.normal(size=37).tolist()
    for p in (0, 15, 50, 85, 100):
        assert derplan.percentile(samples, p) == pytest.approx(np.percentile(samples, p))


def test_polygon_circumscribes_disc():
    cuts = derplan.polygon_coefficients(8)
    assert len(cuts) == 8
    for a, b, c in cuts:
        assert math.hypot(a, b) == pytest.approx(1.0)
        assert c == -1.0


def test_reduce_scenarios_identity():
    pv = [[0.1 * i, 0.2 * i, 0.05 * i] for i in range(5)]
    kept, probs = derplan.reduce_scenarios(pv, 5)
    assert kept == list(range(5))
    assert probs == pytest.approx([0.2] * 5)


def test_extreme_point_count(case):
    assert derplan.count_extreme_points(case, 0, 0) == 1
    with pytest.raises(ValueError):
        derplan.count_extreme_points(case, 25, 0)
