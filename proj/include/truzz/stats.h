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

// stats.csv rows, written by campaigns and read back by the report tools.

#ifndef TRUZZ_STATS_H_
#define TRUZZ_STATS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace truzz {

inline constexpr char kStatsHeader[] =
    "elapsed_s,executions,seeds,edges_covered,valid,invalid,crashes";

struct StatsRow {
  double elapsed_s = 0;
  uint64_t executions = 0;
  uint64_t seeds = 0;
  uint64_t edges_covered = 0;
  uint64_t valid = 0;
  uint64_t invalid = 0;
  uint64_t crashes = 0;

  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

// One CSV line without the trailing newline; elapsed_s has 3 decimals.
std::string FormatStatsRow(const StatsRow& row);

// Throws ConfigError if the header is not exactly kStatsHeader or a row is
// malformed.
std::vector<StatsRow> ParseStatsCsv(std::string_view text);
std::vector<StatsRow> ReadStatsCsv(const std::filesystem::path& path);

// Numeric value of a column by header name; throws ConfigError for unknown
// names.
double StatsColumn(const StatsRow& row, std::string_view column);

}  // namespace truzz

#endif  // TRUZZ_STATS_H_
