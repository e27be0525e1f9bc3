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


#include <cstdio>
#include <sstream>

#include "spinsearch/cli.hpp"

namespace spinsearch::cli {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // no "-0" in the outputs
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string render_cell(const CsvCell &cell) {
  if (const auto *s = std::get_if<std::string>(&cell)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string quoted = "\"";
    for (char c : *s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  if (const auto *i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return format_double(std::get<double>(cell));
}

}  // namespace

std::string CsvTable::render() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

Json RunReport::to_json(bool include_timing) const {
  Json out;
  out["command"] = command;
  out["config"] = config;
  out["result"] = result;
  out["oracle_calls"] = oracle_calls;
  out["max_residual"] = max_residual;
  Json files = Json::array();
  for (const auto &t : tables) files.push_back(t.file_name);
  out["outputs"] = files;
  out["exit_code"] = exit_code;
  if (include_timing) out["wall_clock_seconds"] = wall_clock_seconds;
  return out;
}

}  // namespace spinsearch::cli
