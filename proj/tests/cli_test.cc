#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

namespace derplan {
namespace {

namespace fs = std::filesystem;

// Three buses in a line, four slots, two PV scenarios.
const char* kSmall = R"({
  "name": "small",
  "network": {
    "substation": "s",
    "buses": [{"id": "s", "pg_max": 500, "qg_min": -500, "qg_max": 500,
               "v_min": 1, "v_max": 1, "pv_allowed": false,
               "bess_allowed": false},
              {"id": "a"}, {"id": "b"}],
    "lines": [{"from": "s", "to": "a", "r": 0.01, "x": 0.02, "s_max": 500},
              {"from": "a", "to": "b", "r": 0.01, "x": 0.02, "s_max": 500}]
  },
  "scenarios": {"probabilities": [0.6, 0.4]},
  "pv": {"profile": [[0.0, 0.0], [0.6, 0.3], [0.8, 0.5], [0.1, 0.0]]},
  "loads": {"pl": [[0, 10, 20], [0, 15, 25], [0, 20, 30], [0, 30, 40]],
            "q_over_p": 0.3},
  "costs": {"c_pv": 0.02, "c_bt": 0.03, "i_pv": 1, "i_bt": 1,
            "price": [0.1, 0.2, 0.3, 0.4]},
  "uncertainty": {"pl": {"method": "relative", "fraction": 0.2}}
})";

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() /
           ("derplan_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("small.json", kSmall);
  }
  ~Workspace() { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  // Runs the tool; stdout lands in `out`.
  int run(const std::string& args, std::string* out = nullptr) const {
    const std::string log = path("stdout.txt");
    const std::string cmd = std::string("\"") + DERPLAN_CLI + "\" " + args +
                            " > \"" + log + "\" 2> \"" + path("stderr.txt") +
                            "\"";
    const int status = std::system(cmd.c_str());
    if (out != nullptr) *out = read(log);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string read(const std::string& file) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

using Row = std::map<std::string, std::string>;

std::vector<Row> parse_rows(const std::string& csv) {
  std::stringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  std::vector<Row> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.rfind("formulation,", 0) == 0) {
      header = split(line);
      continue;
    }
    if (header.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size()) continue;
    Row r;
    for (size_t k = 0; k < cells.size(); ++k) r[header[k]] = cells[k];
    rows.push_back(r);
  }
  return rows;
}

double num(const Row& r, const std::string& key) {
  return std::stod(r.at(key));
}

TEST_CASE("validate accepts a good case and rejects a broken one") {
  Workspace ws;
  std::string out;
  CHECK(ws.run("validate " + ws.path("small.json"), &out) == 0);
  CHECK(out.find("ok (3 buses, 2 lines, 4 slots, 2 scenarios)") !=
        std::string::npos);
  ws.write("broken.json", "{\"network\": 3}");
  CHECK(ws.run("validate " + ws.path("broken.json")) == 2);
  CHECK(ws.run("validate " + ws.path("missing.json")) == 2);
}

TEST_CASE("bad arguments exit with the usage code") {
  Workspace ws;
  CHECK(ws.run("frobnicate") == 2);
  CHECK(ws.run("solve " + ws.path("small.json")) == 2);
  CHECK(ws.run("solve magic " + ws.path("small.json")) == 2);
  CHECK(ws.run("solve aro " + ws.path("small.json") + " --cut-style x") == 2);
  CHECK(ws.run("sweep " + ws.path("small.json") + " --betas 1,x") == 2);
}

TEST_CASE("solve writes consistent reports") {
  Workspace ws;
  const std::string out_dir = ws.path("out");
  REQUIRE(ws.run("solve det " + ws.path("small.json") + " --out " + out_dir) ==
          0);
  const std::vector<Row> rows =
      parse_rows(Workspace::read(out_dir + "/det_b0_0.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(num(rows[0], "objective") ==
        doctest::Approx(num(rows[0], "investment_cost") +
                        num(rows[0], "operational_cost"))
            .epsilon(1e-5));
  CHECK(fs::exists(out_dir + "/det_b0_0_capacities.csv"));
  const auto plan =
      nlohmann::json::parse(Workspace::read(out_dir + "/det_b0_0.json"));
  CHECK(plan["formulation"] == "det");

  // A zero budget leaves ARO at the deterministic value.
  REQUIRE(ws.run("solve aro " + ws.path("small.json") + " -q --beta 0 --out " +
                 out_dir) == 0);
  const std::vector<Row> aro =
      parse_rows(Workspace::read(out_dir + "/aro_b0_0.csv"));
  REQUIRE(aro.size() == 1);
  CHECK(num(aro[0], "objective") ==
        doctest::Approx(num(rows[0], "objective")).epsilon(1e-6));
  CHECK(aro[0].at("status") == "converged");
  CHECK(fs::exists(out_dir + "/traces/aro_b0_0.jsonl"));
}

TEST_CASE("sweep rows are complete and robust costs grow with the budget") {
  Workspace ws;
  std::string out;
  REQUIRE(ws.run("sweep " + ws.path("small.json") + " -q --betas 0,1,2 --out " +
                     ws.path("out"),
                 &out) == 0);
  const std::vector<Row> rows = parse_rows(out);
  REQUIRE(rows.size() == 2 + 3 * 3);
  CHECK(Workspace::read(ws.path("out/sweep.csv")) == out);
  std::map<std::string, double> previous;
  for (const Row& r : rows) {
    const std::string f = r.at("formulation");
    if (f == "det" || f == "tsso") continue;
    const double v = num(r, "objective");
    if (previous.count(f)) CHECK(v >= previous[f] - 1e-6 * (1 + v));
    previous[f] = v;
  }
}

TEST_CASE("benchmark and autonomy commands") {
  Workspace ws;
  std::string out;
  REQUIRE(ws.run("pi " + ws.path("small.json") + " -q --out " +
                     ws.path("out"),
                 &out) == 0);
  const std::string cmp = Workspace::read(ws.path("out/pi_comparison.csv"));
  std::stringstream in(cmp);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const double pi = std::stod(line.substr(line.rfind("pi,0,0,", 0) + 7));
  int compared = 0;
  while (std::getline(in, line)) {
    std::stringstream cells(line);
    std::string cell;
    for (int k = 0; k < 4; ++k) std::getline(cells, cell, ',');
    CHECK(std::stod(cell) >= pi - 1e-6 * (1 + pi));
    ++compared;
  }
  CHECK(compared == 5);

  REQUIRE(ws.run("autonomy " + ws.path("small.json") + " --levels 0,0.2,1",
                 &out) == 0);
  CHECK(out.rfind("level,", 0) == 0);
}

TEST_CASE("oracle check agrees with enumeration") {
  Workspace ws;
  std::string out;
  CHECK(ws.run("oracle-check " + ws.path("small.json") + " -q --beta 1",
               &out) == 0);
  CHECK(out.find("MISMATCH") == std::string::npos);
}

}  // namespace
}  // namespace derplan
