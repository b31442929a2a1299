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

"""PV and battery siting and sizing on radial distribution networks."""

from ._core import (
    Case,
    CapacityError,
    SolverError,
    autonomy_curve,
    count_extreme_points,
    load_case,
    parse_case,
    percentile,
    perfect_information,
    polygon_coefficients,
    reduce_case_scenarios,
    reduce_scenarios,
    solve,
    sweep_csv,
    validate_case,
)

__all__ = [
    "Case",
    "CapacityError",
    "SolverError",
    "autonomy_curve",
    "count_extreme_points",
    "load_case",
    "parse_case",
    "percentile",
    "perfect_information",
    "polygon_coefficients",
    "reduce_case_scenarios",
    "reduce_scenarios",
    "solve",
    "sweep_csv",
    "validate_case",
]
