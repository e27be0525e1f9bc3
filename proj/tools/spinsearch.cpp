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


// spinsearch <search|grover-scan|spectrum|compose-bench|selftest> --config <path> --out <dir>

#include <iostream>

#include <CLI11.hpp>

#include "spinsearch/cli.hpp"

int main(int argc, char **argv) {
  namespace cli = spinsearch::cli;
  CLI::App app{"Ensemble spin-search simulator"};
  app.require_subcommand(1);
  std::string config;
  std::string out = ".";
  bool timing = false;
  for (const auto &name : cli::command_names()) {
    CLI::App *sub = app.add_subcommand(name);
    auto *opt = sub->add_option("--config", config, "JSON experiment config");
    if (name != "selftest") opt->required();
    sub->add_option("--out", out, "output directory (created if missing)");
    sub->add_flag("--timing", timing, "record wall-clock time in report.json");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const std::filesystem::path config_path(config);
  return cli::run_command(command, config.empty() ? nullptr : &config_path, out, timing,
                          std::cerr);
}
