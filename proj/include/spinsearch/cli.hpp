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


#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace spinsearch::cli {

using Json = nlohmann::ordered_json;

/** Process exit codes of the spinsearch driver. */
enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitConfigError = 2,
  kExitAmbiguousReadout = 3,
  kExitSamplingError = 4,
  kExitBranchError = 5,
};

/** A CSV cell: text, integer or a double written with 17 significant digits. */
using CsvCell = std::variant<std::string, std::int64_t, double>;

struct CsvTable {
  std::string file_name;
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  /** Header row plus one line per row; doubles as %.17g. */
  std::string render() const;
};

/** Machine-readable outcome of one command. */
struct RunReport {
  std::string command;
  Json config;
  Json result = Json::object();
  std::int64_t oracle_calls = 0;
  /** Largest numerical residual met while producing the result. */
  double max_residual = 0.0;
  double wall_clock_seconds = 0.0;
  std::vector<CsvTable> tables;
  /** Exit code the driver should return (selftest failures set kExitSelftestFailed). */
  int exit_code = kExitOk;

  /** report.json body; wall-clock time only when include_timing is set. */
  Json to_json(bool include_timing) const;
};

/** Formats a double with 17 significant digits ("%.17g"). */
std::string format_double(double value);

/** Reads and parses a JSON config file. Throws ConfigurationError. */
Json load_config(const std::filesystem::path &path);

/**
 * Checks a config against the schema of the named command and fills in
 * defaults. Every violation is collected; a ConfigurationError listing all
 * of them is thrown if there is any.
 */
Json validate_config(const std::string &command, const Json &config);

/** The commands; each expects a config already passed through validate_config. */
RunReport cmd_search(const Json &config);
RunReport cmd_grover_scan(const Json &config);
RunReport cmd_spectrum(const Json &config);
RunReport cmd_compose_bench(const Json &config);

/** Invariant suite at n <= 4; tolerances scaled by tol_scale. */
RunReport cmd_selftest(double tol_scale);

/** SPINSEARCH_TOL_SCALE, default 1. Throws ConfigurationError if malformed. */
double tolerance_scale_from_env();

/** Names accepted by run_command. */
const std::vector<std::string> &command_names();

/**
 * Validates, runs, writes report.json and the CSV tables into out_dir and maps
 * library errors onto ExitCode. Diagnostics go to the given stream.
 */
int run_command(const std::string &command, const std::filesystem::path *config_path,
                const std::filesystem::path &out_dir, bool include_timing,
                std::ostream &diagnostics);

}  // namespace spinsearch::cli
