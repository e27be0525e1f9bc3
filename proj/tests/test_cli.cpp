// Copyright 2026 The spinsearch Authors
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


#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinsearch/cli.hpp"
#include "spinsearch/errors.hpp"
#include "spinsearch/linalg.hpp"

using namespace spinsearch;
using namespace spinsearch::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScratch = SPINSEARCH_SCRATCH_DIR;
const fs::path kConfigs = SPINSEARCH_CONFIG_DIR;

int run_shell(const std::string &command_line) {
  const int status = std::system((command_line + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_tool(const std::string &args, const std::string &env = "") {
  return run_shell(env + (env.empty() ? "" : " ") + std::string(SPINSEARCH_BINARY) + " " + args);
}

fs::path write_config(const std::string &name, const std::string &body) {
  fs::create_directories(kScratch / "configs");
  const fs::path path = kScratch / "configs" / name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json validated(const std::string &command, const std::string &body) {
  return validate_config(command, Json::parse(body));
}

}  // namespace

TEST_CASE("CSV cells use 17 significant digits and a header row", "[cli]") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CsvTable t{"x.csv", {"a", "b", "c"}, {{std::string("p,q"), std::int64_t{3}, 0.25}}};
  CHECK(t.render() == "a,b,c\n\"p,q\",3,0.25\n");
}

TEST_CASE("config validation collects every schema violation", "[cli]") {
  try {
    validated("search", R"({"n": 9, "colour": "red"})");
    FAIL("expected a configuration error");
  } catch (const ConfigurationError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("/n") != std::string::npos);
    CHECK(msg.find("/s: required key missing") != std::string::npos);
    CHECK(msg.find("/colour: unknown key") != std::string::npos);
  }
  CHECK_THROWS_AS(validated("search", R"({"n": 2, "s": 1, "epsilons": [1]})"), ConfigurationError);
  CHECK_THROWS_AS(validated("search", R"({"n": 2, "s": 1, "epsilons": [1, 0]})"), ConfigurationError);
  CHECK_THROWS_AS(validated("search", R"({"n": 2, "s": 4})"), ConfigurationError);
  CHECK_THROWS_AS(validated("search", R"([1, 2])"), ConfigurationError);
  CHECK_THROWS_AS(validated("grover-scan", R"({"n": 2, "m_range": [3, 1]})"), ConfigurationError);
  CHECK_THROWS_AS(validated("spectrum", R"({"n": 2, "dwell": -1, "points": 8,
      "hamiltonian": {"kind": "uniform_fz", "omega": 1}})"), ConfigurationError);
  CHECK_THROWS_AS(validated("compose-bench", R"({"benches": [{"method": "cross_interaction",
      "level": 3, "t": [0.1]}]})"), ConfigurationError);
  CHECK_THROWS_AS(validated("search", R"({"command": "spectrum", "n": 1, "s": 0})"),
                  ConfigurationError);

  const Json filled = validated("search", R"({"n": 2, "s": 1})");
  CHECK(filled["epsilons"] == Json({1.0, 1.0}));
  CHECK(filled["theta"].get<double>() == -kPi / 2);
  CHECK(filled["oracle_mode"] == "selective");
}

TEST_CASE("search command", "[cli]") {
  const RunReport r = cmd_search(validated("search", R"({"n": 3, "s": 5})"));
  CHECK(r.result["recovered_s"] == 5);
  CHECK(r.oracle_calls == 2);
  CHECK(r.max_residual <= 1e-12);
  CHECK(r.result["prefactor"]["ratio_measured_to_two_over_n"].get<double>() ==
        Catch::Approx(-1.0).margin(1e-12));
  CHECK(cmd_search(validated("search", R"({"n": 1, "s": 0})")).result["recovered_s"] == 0);
  const RunReport explicit_mode =
      cmd_search(validated("search", R"({"n": 2, "s": 2, "oracle_mode": "explicit"})"));
  CHECK(explicit_mode.result["recovered_s"] == 2);
  CHECK_THROWS_AS(cmd_search(validated("search", R"({"n": 2, "s": 1, "theta": 0})")),
                  AmbiguousReadoutError);
}

TEST_CASE("grover-scan command", "[cli]") {
  const RunReport r = cmd_grover_scan(validated("grover-scan", R"({"n": 2, "m_range": [0, 3]})"));
  const CsvTable &rows = r.tables.at(0);
  REQUIRE(rows.rows.size() == 4);
  CHECK(std::get<double>(rows.rows[0][15]) == Catch::Approx(1.0).margin(1e-12));
  const double alpha[] = {-2.0, -2.0, 0.0, 4.0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::get<double>(rows.rows[1][3 + i]) == Catch::Approx(alpha[i]).margin(1e-12));
  }
  CHECK(r.max_residual <= 1e-9);

  const RunReport scan =
      cmd_grover_scan(validated("grover-scan", R"({"n_range": [2, 6], "m_range": [0, 25]})"));
  CHECK(scan.result["max_one_minus_C_decreasing"] == true);
  CHECK(scan.tables.at(1).rows.size() == 5);
}

TEST_CASE("spectrum command", "[cli]") {
  const RunReport flat = cmd_spectrum(validated("spectrum", R"({"n": 2,
      "hamiltonian": {"kind": "uniform_fz", "omega": 62.83185307179586},
      "dwell": 0.00625, "points": 64})"));
  REQUIRE(flat.result["peak_count"] == 1);
  CHECK(flat.result["peaks"][0]["order"] == 0);

  const RunReport oracle = cmd_spectrum(Json(validate_config(
      "spectrum", load_config(kConfigs / "spectrum_n3_oracle.json"))));
  CHECK(oracle.result["peak_count"].get<int>() <= 7);
  CHECK(oracle.max_residual <= 1e-9);
  for (const auto &p : oracle.result["peaks"]) CHECK(p["off_grid"].get<double>() <= 1e-9);

  const RunReport cross = cmd_spectrum(
      validate_config("spectrum", load_config(kConfigs / "spectrum_cross_peak.json")));
  bool has_cross = false;
  for (const auto &p : cross.result["peaks"]) {
    CHECK(p["off_grid"].get<double>() <= 0.5 * cross.result["bin_width"].get<double>());
    if (p["order"].get<int>() != 0) has_cross = true;
  }
  CHECK(has_cross);
  CHECK(cross.tables.at(0).header == std::vector<std::string>{"t", "re", "im"});
  CHECK(cross.tables.at(1).header == std::vector<std::string>{"frequency", "re", "im", "order"});

  CHECK_THROWS_AS(cmd_spectrum(validated("spectrum", R"({"n": 1,
      "hamiltonian": {"kind": "uniform_fz", "omega": 1000}, "dwell": 0.01, "points": 16})")),
                  SamplingError);
}

TEST_CASE("compose-bench command", "[cli]") {
  const RunReport commuting = cmd_compose_bench(validated("compose-bench", R"({
      "operators": {"kind": "commuting"},
      "benches": [{"method": "trotter", "t": 1.0, "m": [1, 4]}]})"));
  for (const auto &row : commuting.tables.at(0).rows) CHECK(std::get<double>(row[3]) <= 1e-13);

  const RunReport bench = cmd_compose_bench(
      validate_config("compose-bench", load_config(kConfigs / "compose_bench.json")));
  for (const auto &b : bench.result["benches"]) {
    const double order = b["order_across_values"].get<double>();
    if (b["method"] == "sandwich") CHECK(std::abs(order - 3.0) <= 0.2);
    if (b["method"] == "trotter") CHECK(std::abs(order - 1.0) <= 0.2);
  }
  CHECK(std::abs(bench.result["benches"][4]["order_across_values"].get<double>() - 5.0) <= 0.5);
}

TEST_CASE("selftest inventory", "[cli]") {
  const RunReport ok = cmd_selftest(1.0);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.result["group_count"].get<int>() >= 12);
  const RunReport strict = cmd_selftest(0.0);
  CHECK(strict.exit_code == kExitSelftestFailed);
}

TEST_CASE("driver exit codes", "[cli][binary]") {
  const fs::path out = kScratch / "exit";
  const std::string o = " --out " + out.string();
  CHECK(run_tool("search --config " + (kConfigs / "search_n3_s5.json").string() + o) == 0);
  CHECK(run_tool("") == kExitConfigError);
  CHECK(run_tool("search" + o) == kExitConfigError);
  CHECK(run_tool("search --config /nonexistent.json" + o) == kExitConfigError);
  CHECK(run_tool("search --config " + write_config("bad.json", "{ n: ").string() + o) ==
        kExitConfigError);
  CHECK(run_tool("search --config " + write_config("schema.json", R"({"n": 0})").string() + o) ==
        kExitConfigError);
  CHECK(run_tool("search --config " +
                 write_config("ambiguous.json", R"({"n": 2, "s": 1, "theta": 0})").string() + o) ==
        kExitAmbiguousReadout);
  CHECK(run_tool("spectrum --config " +
                 write_config("nyquist.json", R"({"n": 1, "dwell": 0.01, "points": 16,
                     "hamiltonian": {"kind": "uniform_fz", "omega": 1000}})").string() + o) ==
        kExitSamplingError);
  // exp(i t (3/2) I_z) at t = 4 pi / 3 has eigenphases exactly at +-pi.
  CHECK(run_tool("compose-bench --config " +
                 write_config("branch.json", R"({"operators": {"kind": "commuting"},
                     "benches": [{"method": "sandwich", "t": [4.1887902047863905]}]})").string() + o) ==
        kExitBranchError);
  CHECK(run_tool("selftest" + o) == kExitOk);
  CHECK(run_tool("selftest" + o, "SPINSEARCH_TOL_SCALE=0") == kExitSelftestFailed);
  CHECK(run_tool("selftest" + o, "SPINSEARCH_TOL_SCALE=abc") == kExitConfigError);
}

TEST_CASE("identical configs give byte-identical outputs", "[cli][binary]") {
  for (const auto &[cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"search", "search_n3_s5.json"},
           {"grover-scan", "grover_scan.json"},
           {"spectrum", "spectrum_cross_peak.json"},
           {"compose-bench", "compose_bench.json"}}) {
    const fs::path a = kScratch / "det" / (cmd + "_a");
    const fs::path b = kScratch / "det" / (cmd + "_b");
    const std::string cfg = (kConfigs / file).string();
    REQUIRE(run_tool(cmd + " --config " + cfg + " --out " + a.string()) == 0);
    REQUIRE(run_tool(cmd + " --config " + cfg + " --out " + b.string()) == 0);
    std::size_t files = 0;
    for (const auto &entry : fs::directory_iterator(a)) {
      ++files;
      const std::string first = slurp(entry.path());
      CHECK(!first.empty());
      CHECK(first == slurp(b / entry.path().filename()));
    }
    CHECK(files >= 2);
  }
}
