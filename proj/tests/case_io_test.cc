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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "derplan/case_io.h"
#include "derplan/core_model.h"
#include "test_cases.h"

namespace derplan {
namespace {

namespace fs = std::filesystem;

// Two buses, three slots, one scenario; every optional field left out.
const char* kMinimal = R"({
  "network": {
    "substation": "s",
    "buses": [{"id": "s", "pg_max": 100, "qg_min": -100, "qg_max": 100,
               "v_min": 1, "v_max": 1, "pv_allowed": false,
               "bess_allowed": false},
              {"id": "l"}],
    "lines": [{"from": "s", "to": "l", "r": 0.01, "x": 0.01, "s_max": 200}]
  },
  "scenarios": {"probabilities": [1.0]},
  "pv": {"profile": [0.0, 0.5, 0.2]},
  "loads": {"pl": [[0, 10], [0, 20], [0, 30]], "q_over_p": 0.5},
  "costs": {"c_pv": 0.1, "c_bt": 0.1, "i_pv": 1, "i_bt": 1,
            "price": [0.1, 0.2, 0.3]},
  "uncertainty": {"pl": {"method": "relative", "fraction": 0.1}}
})";

std::string temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("derplan_" + name);
  fs::create_directories(dir);
  return dir.string();
}

TEST_CASE("minimal case fills defaults and derives the envelope") {
  const CaseData c = parse_case(kMinimal);
  CHECK(c.name == "case");
  CHECK(c.horizon() == 3);
  CHECK(c.num_scenarios() == 1);
  CHECK(c.network.num_buses() == 2);
  CHECK(c.costs.c_pv == std::vector<double>{0.1, 0.1});
  CHECK(c.loads.ql[0](2, 1) == doctest::Approx(15.0));
  // One scenario: the PV envelope has no spread.
  CHECK(c.envelope.pv_bar == std::vector<double>{0.0, 0.5, 0.2});
  CHECK(c.envelope.pv_hat == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(c.envelope.pl_bar(1, 1) == doctest::Approx(20.0));
  CHECK(c.envelope.pl_hat(1, 1) == doctest::Approx(2.0));
  CHECK(c.envelope.pl_hat(1, 0) == 0.0);
}

TEST_CASE("malformed input is rejected with invalid_argument") {
  CHECK_THROWS_AS(parse_case("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case("{}"), std::invalid_argument);
  std::string bad = kMinimal;
  bad.replace(bad.find("[1.0]"), 5, "[0.7]");
  CHECK_THROWS_WITH_AS(parse_case(bad), doctest::Contains("probabilit"),
                       std::invalid_argument);
}

TEST_CASE("profiles with the wrong length are reported") {
  std::string bad = kMinimal;
  bad.replace(bad.find("[0.1, 0.2, 0.3]"), 15, "[0.1, 0.2]");
  CHECK_THROWS_AS(parse_case(bad), std::invalid_argument);
}

TEST_CASE("matrices can come from CSV files next to the case") {
  const std::string dir = temp_dir("csv");
  {
    std::ofstream(dir + "/pl.csv") << "slot_s,slot_l\n0,10\n0,20\n0,30\n";
    std::string text = kMinimal;
    const std::string inline_pl = "[[0, 10], [0, 20], [0, 30]]";
    text.replace(text.find(inline_pl), inline_pl.size(),
                 R"({"csv": "pl.csv"})");
    std::ofstream(dir + "/case.json") << text;
  }
  const CaseData from_csv = load_case(dir + "/case.json");
  const CaseData inline_case = parse_case(kMinimal);
  CHECK(from_csv.loads.pl[0] == inline_case.loads.pl[0]);
  CHECK(from_csv.envelope.pl_hat == inline_case.envelope.pl_hat);
}

TEST_CASE("csv reader skips one header and rejects later text") {
  const std::string dir = temp_dir("reader");
  std::ofstream(dir + "/a.csv") << "a,b\n1,2\n\n3,4.5\n";
  const Matrix m = read_csv_matrix(dir + "/a.csv");
  CHECK(m.rows() == 2);
  CHECK(m(1, 1) == 4.5);
  std::ofstream(dir + "/b.csv") << "1,2\nx,y\n";
  CHECK_THROWS_AS(read_csv_matrix(dir + "/b.csv"), std::invalid_argument);
  CHECK_THROWS_AS(read_csv_matrix(dir + "/missing.csv"), std::runtime_error);
  CHECK_THROWS_AS(load_case(dir + "/missing.json"), std::runtime_error);
}

TEST_CASE("bundled cases load and validate") {
  const CaseData five = testing::bundled_case("five_bus.json");
  CHECK(validate_case(five).ok());
  CHECK(five.horizon() == 24);
  CHECK(five.num_scenarios() == 9);
  double total = 0.0;
  for (double p : five.probabilities) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  for (int t = 0; t < five.horizon(); ++t) {
    CHECK(five.envelope.pv_bar[t] - five.envelope.pv_hat[t] >= -1e-12);
    CHECK(five.envelope.pv_bar[t] + five.envelope.pv_hat[t] <= 1.0 + 1e-12);
  }

  const CaseData ieee = load_case(
      testing::source_path("cases/templates/ieee33_template.json"));
  CHECK(ieee.network.num_buses() == 33);
  CHECK(ieee.network.num_lines() == 32);
  CHECK(validate_case(ieee).ok());
}

}  // namespace
}  // namespace derplan
