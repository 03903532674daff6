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

#include "truzz/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "truzz/errors.h"

namespace truzz {

const char* EffectSizeName(EffectSize size) {
  switch (size) {
    case EffectSize::kNone:
      return "none";
    case EffectSize::kSmall:
      return "small";
    case EffectSize::kMedium:
      return "medium";
    case EffectSize::kBig:
      return "big";
  }
  return "?";
}

EffectSize ClassifyA12(double score) {
  if (score >= 0.71) return EffectSize::kBig;
  if (score >= 0.64) return EffectSize::kMedium;
  if (score >= 0.56) return EffectSize::kSmall;
  return EffectSize::kNone;
}

A12Result A12(std::span<const double> first, std::span<const double> second) {
  if (first.empty() || second.empty()) {
    throw PreconditionError("A12 needs two non-empty samples");
  }
  // Rank-based count: for each x, the number of y below it plus half the
  // ties. Doubled counts keep everything in integers.
  std::vector<double> sorted(second.begin(), second.end());
  std::sort(sorted.begin(), sorted.end());
  uint64_t doubled = 0;
  for (double x : first) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto hi = std::upper_bound(lo, sorted.end(), x);
    doubled += 2 * static_cast<uint64_t>(lo - sorted.begin()) +
               static_cast<uint64_t>(hi - lo);
  }
  A12Result result;
  result.score = static_cast<double>(doubled) /
                 (2.0 * static_cast<double>(first.size()) *
                  static_cast<double>(second.size()));
  result.magnitude = ClassifyA12(result.score);
  return result;
}

namespace {

double ValidRatioPercent(const StatsRow& row) {
  const uint64_t n = row.valid + row.invalid;
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(row.valid) / static_cast<double>(n);
}

// Edges at `executions` under step interpolation (last row at or before).
uint64_t EdgesAt(std::span<const StatsRow> rows, uint64_t executions) {
  uint64_t edges = 0;
  for (const StatsRow& r : rows) {
    if (r.executions > executions) break;
    edges = r.edges_covered;
  }
  return edges;
}

}  // namespace

CampaignComparison CompareCampaigns(std::span<const StatsRow> a,
                                    std::span<const StatsRow> b) {
  if (a.empty() || b.empty()) {
    throw PreconditionError("both campaigns need at least one stats row");
  }
  CampaignComparison c;
  c.valid_ratio_a = ValidRatioPercent(a.back());
  c.valid_ratio_b = ValidRatioPercent(b.back());
  c.valid_ratio_delta_points = c.valid_ratio_b - c.valid_ratio_a;
  c.edges_a = a.back().edges_covered;
  c.edges_b = b.back().edges_covered;
  c.edges_delta_percent =
      c.edges_a == 0 ? 0.0
                     : 100.0 * (static_cast<double>(c.edges_b) -
                                static_cast<double>(c.edges_a)) /
                           static_cast<double>(c.edges_a);

  std::vector<uint64_t> grid;
  for (const StatsRow& r : a) grid.push_back(r.executions);
  for (const StatsRow& r : b) grid.push_back(r.executions);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (uint64_t x : grid) c.series.push_back({x, EdgesAt(a, x), EdgesAt(b, x)});
  return c;
}

std::string FormatComparison(const CampaignComparison& c) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "valid_ratio_a: %.2f%%\nvalid_ratio_b: %.2f%%\n",
                c.valid_ratio_a, c.valid_ratio_b);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "valid_ratio_delta (absolute percentage points, b - a): %+.2f\n",
                c.valid_ratio_delta_points);
  out << buf;
  out << "edges_a: " << c.edges_a << "\nedges_b: " << c.edges_b << "\n";
  std::snprintf(buf, sizeof(buf),
                "edges_delta (relative percent, (b - a) / a): %+.2f%%\n",
                c.edges_delta_percent);
  out << buf;
  out << "\nexecutions\tedges_a\tedges_b\n";
  for (const CoveragePoint& p : c.series) {
    out << p.executions << "\t" << p.edges_a << "\t" << p.edges_b << "\n";
  }
  return out.str();
}

std::vector<double> CollectFinalMetric(const std::filesystem::path& dir,
                                       std::string_view metric) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") {
      files.push_back(e.path());
    } else if (e.is_directory() && fs::is_regular_file(e.path() / "stats.csv")) {
      files.push_back(e.path() / "stats.csv");
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<double> values;
  for (const auto& f : files) {
    const auto rows = ReadStatsCsv(f);
    if (rows.empty()) throw ConfigError(f.string() + " has no stats rows");
    values.push_back(StatsColumn(rows.back(), metric));
  }
  if (values.empty()) throw ConfigError("no stats files under " + dir.string());
  return values;
}

}  // namespace truzz
