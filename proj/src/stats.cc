// Copyright 2026 The Truzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "truzz/stats.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "truzz/errors.h"

namespace truzz {

std::string FormatStatsRow(const StatsRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.3f,%llu,%llu,%llu,%llu,%llu,%llu",
                row.elapsed_s, static_cast<unsigned long long>(row.executions),
                static_cast<unsigned long long>(row.seeds),
                static_cast<unsigned long long>(row.edges_covered),
                static_cast<unsigned long long>(row.valid),
                static_cast<unsigned long long>(row.invalid),
                static_cast<unsigned long long>(row.crashes));
  return buf;
}

std::vector<StatsRow> ParseStatsCsv(std::string_view text) {
  std::vector<StatsRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kStatsHeader) {
        throw ConfigError("stats header mismatch: expected '" +
                          std::string(kStatsHeader) + "', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    auto bad = [&] {
      return ConfigError("stats row " + std::to_string(line_no) +
                         " does not match the schema");
    };
    if (fields.size() != 7) throw bad();
    StatsRow row;
    auto parse_u64 = [&](std::string_view f, uint64_t& out) {
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
      if (ec != std::errc() || p != f.data() + f.size()) throw bad();
    };
    {
      const auto f = fields[0];
      const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), row.elapsed_s);
      if (ec != std::errc() || p != f.data() + f.size()) throw bad();
    }
    parse_u64(fields[1], row.executions);
    parse_u64(fields[2], row.seeds);
    parse_u64(fields[3], row.edges_covered);
    parse_u64(fields[4], row.valid);
    parse_u64(fields[5], row.invalid);
    parse_u64(fields[6], row.crashes);
    rows.push_back(row);
  }
  if (!header_seen) throw ConfigError("stats file is empty");
  return rows;
}

std::vector<StatsRow> ReadStatsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read stats file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseStatsCsv(ss.str());
}

double StatsColumn(const StatsRow& row, std::string_view column) {
  if (column == "elapsed_s") return row.elapsed_s;
  if (column == "executions") return static_cast<double>(row.executions);
  if (column == "seeds") return static_cast<double>(row.seeds);
  if (column == "edges_covered") return static_cast<double>(row.edges_covered);
  if (column == "valid") return static_cast<double>(row.valid);
  if (column == "invalid") return static_cast<double>(row.invalid);
  if (column == "crashes") return static_cast<double>(row.crashes);
  throw ConfigError("unknown stats column '" + std::string(column) + "'");
}

}  // namespace truzz
