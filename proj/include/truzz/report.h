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

// Post-campaign analysis: Vargha-Delaney A12 effect size, and comparison of
// two campaigns' stats.csv files.

#ifndef TRUZZ_REPORT_H_
#define TRUZZ_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "truzz/stats.h"

namespace truzz {

enum class EffectSize { kNone, kSmall, kMedium, kBig };

const char* EffectSizeName(EffectSize size);

struct A12Result {
  double score = 0.5;
  EffectSize magnitude = EffectSize::kNone;
};

// Big at >= 0.71, medium at >= 0.64, small at >= 0.56.
EffectSize ClassifyA12(double score);

// Probability that a draw from `first` exceeds one from `second`, ties
// counted half. Throws PreconditionError on an empty sample.
A12Result A12(std::span<const double> first, std::span<const double> second);

struct CoveragePoint {
  uint64_t executions = 0;
  uint64_t edges_a = 0;
  uint64_t edges_b = 0;
};

struct CampaignComparison {
  double valid_ratio_a = 0;  // percent
  double valid_ratio_b = 0;  // percent
  double valid_ratio_delta_points = 0;  // b - a, absolute percentage points
  uint64_t edges_a = 0;
  uint64_t edges_b = 0;
  double edges_delta_percent = 0;  // (b - a) / a, relative percent
  std::vector<CoveragePoint> series;  // union of both row grids
};

// Throws PreconditionError if either side has no rows.
CampaignComparison CompareCampaigns(std::span<const StatsRow> a,
                                    std::span<const StatsRow> b);

// Human-readable report followed by a TSV coverage series.
std::string FormatComparison(const CampaignComparison& comparison);

// Final-row value of `metric` for each repeated run under `dir`: every
// *.csv file directly inside it and every subdirectory holding stats.csv,
// in name order.
std::vector<double> CollectFinalMetric(const std::filesystem::path& dir,
                                       std::string_view metric);

}  // namespace truzz

#endif  // TRUZZ_REPORT_H_
