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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "derplan/core_model.h"
#include "test_cases.h"

namespace derplan {
namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) {
                       return v.find(needle) != std::string::npos;
                     });
}

TEST_CASE("toy and random cases validate") {
  CHECK(validate_case(testing::toy_case()).ok());
  for (uint32_t seed = 1; seed <= 10; ++seed) {
    CHECK(validate_case(testing::random_case(seed, 4, 3, 2)).ok());
  }
}

TEST_CASE("a loop is reported as not radial") {
  CaseData c = testing::toy_case();
  c.network.lines.push_back({"b0", "b2", 0.01, 0.01, 100.0});
  const ValidationReport r = validate_case(c);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "not radial"));
}

TEST_CASE("a disconnected bus is reported as not radial") {
  CaseData c = testing::toy_case();
  Bus extra;
  extra.id = "island";
  c.network.buses.push_back(extra);
  CHECK(mentions(validate_case(c), "not radial"));
}

TEST_CASE("violations are collected, not just the first") {
  CaseData c = testing::toy_case();
  c.tech.soc_min = 0.95;  // above soc_max
  c.probabilities = {0.5, 0.6};
  c.polygon_segments = 3;
  const ValidationReport r = validate_case(c);
  CHECK(mentions(r, "soc bounds inverted"));
  CHECK(mentions(r, "probabilities sum"));
  CHECK(mentions(r, "polygon_segments"));
}

TEST_CASE("PV availability must stay in [0,1]") {
  CaseData c = testing::toy_case();
  c.pv_profile.pv(1, 0) = 1.2;
  CHECK(mentions(validate_case(c), "pv availability"));
}

TEST_CASE("topology incidence") {
  const CaseData c = testing::toy_case();
  const Topology topo = Topology::of(c.network);
  CHECK(topo.substation == 0);
  CHECK(topo.from == std::vector<int>{0, 1});
  CHECK(topo.to == std::vector<int>{1, 2});
  CHECK(topo.outgoing[1] == std::vector<int>{1});
  CHECK(topo.incoming[1] == std::vector<int>{0});
  CHECK(topo.incoming[0].empty());
}

TEST_CASE("polygon coefficients") {
  CHECK_THROWS_AS(polygon_coefficients(3), std::invalid_argument);
  for (int n : {4, 6, 8, 12, 33}) {
    const std::vector<PolygonCut> cuts = polygon_coefficients(n);
    REQUIRE(cuts.size() == static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
      CHECK(cuts[r].c == -1.0);
      CHECK(std::hypot(cuts[r].a, cuts[r].b) == doctest::Approx(1.0));
      CHECK(cuts[r].a == doctest::Approx(std::cos(2 * std::numbers::pi * r / n)));
    }
    // Every point of the disc of radius S satisfies every cut; the polygon
    // vertices sit at S / cos(pi / n).
    const double S = 7.0;
    for (int k = 0; k < 360; ++k) {
      const double th = 2 * std::numbers::pi * k / 360;
      const double p = S * std::cos(th), q = S * std::sin(th);
      for (const PolygonCut& cut : cuts) {
        CHECK(cut.a * p + cut.b * q + cut.c * S <= 1e-9);
      }
    }
    const double vertex = S / std::cos(std::numbers::pi / n);
    const double th = std::numbers::pi / n;
    double worst = -1e9;
    for (const PolygonCut& cut : cuts) {
      worst = std::max(worst, cut.a * vertex * std::cos(th) +
                                  cut.b * vertex * std::sin(th) + cut.c * S);
    }
    CHECK(worst == doctest::Approx(0.0).epsilon(1e-9));
  }
  const std::vector<PolygonCut> square = polygon_coefficients(4);
  CHECK(square[1].a == 0.0);  // snapped, not 6e-17
}

TEST_CASE("profiles") {
  const CaseData c = testing::toy_case();
  const OperatingProfile s1 = scenario_profile(c, 1);
  CHECK(s1.pv[1] == doctest::Approx(0.3));
  CHECK(s1.price[3] == doctest::Approx(0.32));

  const OperatingProfile e = expected_profile(c);
  CHECK(e.pv[1] == doctest::Approx(0.6 * 0.7 + 0.4 * 0.3));
  CHECK(e.pl(3, 1) == doctest::Approx(0.6 * 90 + 0.4 * 96));

  const OperatingProfile n = nominal_profile(c);
  CHECK(n.pv == c.envelope.pv_bar);
  CHECK(n.pl == c.envelope.pl_bar);
  CHECK(n.price == e.price);

  const OperatingProfile cat = concatenated_profile(c);
  REQUIRE(cat.horizon() == 8);
  CHECK(cat.pv[5] == doctest::Approx(0.3));
  CHECK(cat.pl(7, 1) == doctest::Approx(96.0));

  Realization r{n.pv, n.pl};
  r.pv[2] = 0.0;
  r.pl(2, 1) = 123.0;
  const OperatingProfile w = with_realization(n, r);
  CHECK(w.pv[2] == 0.0);
  CHECK(w.pl(2, 1) == 123.0);
  CHECK(w.ql == n.ql);
}

TEST_CASE("grid bounds are checked") {
  Matrix m(2, 3);
  CHECK_THROWS_AS(m(2, 0), std::out_of_range);
  CHECK_THROWS_AS(Matrix(-1, 2), std::invalid_argument);
}

}  // namespace
}  // namespace derplan
