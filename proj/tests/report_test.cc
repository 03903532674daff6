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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "truzz/corpus_store.h"
#include "truzz/errors.h"
#include "truzz/stats.h"

namespace truzz {
namespace {

namespace fs = std::filesystem;

double BruteA12(const std::vector<double>& x, const std::vector<double>& y) {
  double wins = 0;
  for (double a : x) {
    for (double b : y) wins += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

// Two decimals, cut rather than rounded, the way the published tables print.
double Truncate2(double v) { return std::trunc(v * 100.0) / 100.0; }

TEST(A12Test, Fixtures) {
  const std::vector<double> same = {4, 8, 15, 16, 23, 42};
  EXPECT_EQ(A12(same, same).score, 0.5);
  EXPECT_EQ(A12(same, same).magnitude, EffectSize::kNone);
  const std::vector<double> hi = {10, 11, 12}, lo = {1, 2, 3};
  EXPECT_EQ(A12(hi, lo).score, 1.0);
  EXPECT_EQ(A12(hi, lo).magnitude, EffectSize::kBig);
  EXPECT_EQ(A12(std::vector<double>{3, 1}, std::vector<double>{2, 2}).score, 0.5);
  EXPECT_THROW(A12(std::vector<double>{}, lo), PreconditionError);
}

TEST(A12Test, Thresholds) {
  EXPECT_EQ(ClassifyA12(0.71), EffectSize::kBig);
  EXPECT_EQ(ClassifyA12(0.7099), EffectSize::kMedium);
  EXPECT_EQ(ClassifyA12(0.64), EffectSize::kMedium);
  EXPECT_EQ(ClassifyA12(0.56), EffectSize::kSmall);
  EXPECT_EQ(ClassifyA12(0.5599), EffectSize::kNone);
  EXPECT_EQ(ClassifyA12(0.1), EffectSize::kNone);
  EXPECT_STREQ(EffectSizeName(EffectSize::kBig), "big");
}

TEST(A12Property, BruteForceAndComplement) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(1 + rng() % 50), y(1 + rng() % 50);
    const int spread = 1 + rng() % 20;  // small spreads force ties
    for (auto& v : x) v = static_cast<double>(rng() % spread);
    for (auto& v : y) v = static_cast<double>(rng() % spread);
    const double s = A12(x, y).score;
    ASSERT_EQ(s, BruteA12(x, y));
    ASSERT_EQ(s + A12(y, x).score, 1.0);
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
  }
}

StatsRow Row(uint64_t execs, uint64_t edges, uint64_t valid, uint64_t invalid) {
  StatsRow r;
  r.executions = execs;
  r.edges_covered = edges;
  r.valid = valid;
  r.invalid = invalid;
  return r;
}

TEST(CompareTest, NmRowArithmetic) {
  const uint64_t total = 6956016;
  const std::vector<StatsRow> a = {Row(total, 3690, 266119, total - 266119)};
  const std::vector<StatsRow> b = {Row(total, 4828, 2531141, total - 2531141)};
  const CampaignComparison c = CompareCampaigns(a, b);
  EXPECT_EQ(Truncate2(c.valid_ratio_a), 3.82);
  EXPECT_EQ(Truncate2(c.valid_ratio_b), 36.38);
  EXPECT_NEAR(c.valid_ratio_delta_points, 32.56, 0.01);
  EXPECT_NEAR(c.edges_delta_percent, 30.84, 0.005);
}

TEST(CompareTest, IdenticalIsZeroAndSwapFlipsSign) {
  const std::vector<StatsRow> a = {Row(100, 10, 40, 60), Row(200, 15, 90, 110)};
  const std::vector<StatsRow> b = {Row(150, 12, 100, 50), Row(300, 30, 200, 100)};
  const CampaignComparison same = CompareCampaigns(a, a);
  EXPECT_EQ(same.valid_ratio_delta_points, 0.0);
  EXPECT_EQ(same.edges_delta_percent, 0.0);
  const CampaignComparison ab = CompareCampaigns(a, b), ba = CompareCampaigns(b, a);
  EXPECT_EQ(ab.valid_ratio_delta_points, -ba.valid_ratio_delta_points);
  EXPECT_GT(ab.edges_delta_percent, 0);
  EXPECT_LT(ba.edges_delta_percent, 0);
  // Union grid with step interpolation.
  ASSERT_EQ(ab.series.size(), 4u);
  EXPECT_EQ(ab.series[1].executions, 150u);
  EXPECT_EQ(ab.series[1].edges_a, 10u);
  EXPECT_EQ(ab.series[1].edges_b, 12u);
  EXPECT_EQ(ab.series[0].edges_b, 0u);
  const std::string text = FormatComparison(ab);
  EXPECT_NE(text.find("absolute percentage points"), std::string::npos);
  EXPECT_NE(text.find("relative percent"), std::string::npos);
  EXPECT_THROW(CompareCampaigns(std::vector<StatsRow>{}, a), PreconditionError);
}

TEST(StatsTest, FormatAndParse) {
  StatsRow r{1.5, 10, 2, 30, 6, 4, 1};
  EXPECT_EQ(FormatStatsRow(r), "1.500,10,2,30,6,4,1");
  const std::string text = std::string(kStatsHeader) + "\n" + FormatStatsRow(r) + "\n";
  const auto rows = ParseStatsCsv(text);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], r);
  EXPECT_EQ(StatsColumn(r, "edges_covered"), 30.0);
  EXPECT_THROW(StatsColumn(r, "speed"), ConfigError);
  EXPECT_THROW(ParseStatsCsv("a,b\n1,2\n"), ConfigError);
  EXPECT_THROW(ParseStatsCsv(std::string(kStatsHeader) + "\n1,2\n"), ConfigError);
}

TEST(CollectFinalMetricTest, FilesAndRunDirectories) {
  const fs::path dir = fs::temp_directory_path() / "truzz-collect-test";
  fs::remove_all(dir);
  fs::create_directories(dir / "run2");
  auto write = [](const fs::path& p, uint64_t edges) {
    std::ofstream out(p);
    out << kStatsHeader << "\n"
        << FormatStatsRow(Row(5, 1, 0, 0)) << "\n"
        << FormatStatsRow(Row(10, edges, 0, 0)) << "\n";
  };
  write(dir / "run1.csv", 40);
  write(dir / "run2" / "stats.csv", 50);
  EXPECT_EQ(CollectFinalMetric(dir, "edges_covered"), (std::vector<double>{40, 50}));
  EXPECT_THROW(CollectFinalMetric(dir / "nope", "edges_covered"), ConfigError);
  fs::remove_all(dir);
}

TEST(CorpusStoreTest, SeedMetaRoundTrip) {
  SeedEntry e;
  e.id = 12;
  e.rank_key = 7;
  e.insertion_order = 3;
  e.times_selected = 2;
  e.path = Path({1, 5, 9});
  SeedAnalysis a;
  a.fitness.fitness = {0.0, 1.0 - 50.0 / 240.0, 0.1};
  a.fitness.probe_count = 4;
  a.mask.probability = {1.0, 50.0 / 240.0, 0.9};
  e.analysis = a;
  SeedEntry back;
  ParseSeedMeta(FormatSeedMeta(e), back);
  EXPECT_EQ(back.id, 12u);
  EXPECT_EQ(back.rank_key, 7u);
  EXPECT_EQ(back.insertion_order, 3u);
  EXPECT_EQ(back.times_selected, 2u);
  EXPECT_EQ(back.path, e.path);
  ASSERT_TRUE(back.analysis);
  EXPECT_EQ(back.analysis->fitness.fitness, a.fitness.fitness);  // exact
  EXPECT_EQ(back.analysis->mask.probability, a.mask.probability);
  EXPECT_EQ(back.analysis->fitness.probe_count, 4u);

  SeedEntry bare;
  bare.path = Path();
  SeedEntry bare_back;
  ParseSeedMeta(FormatSeedMeta(bare), bare_back);
  EXPECT_TRUE(bare_back.path.empty());
  EXPECT_FALSE(bare_back.analysis);
  EXPECT_THROW(ParseSeedMeta("id = x\n", bare_back), ConfigError);
}

TEST(CorpusStoreTest, FileNames) {
  EXPECT_EQ(SeedFileName(0), "id_000000");
  EXPECT_EQ(SeedFileName(123456), "id_123456");
}

}  // namespace
}  // namespace truzz
