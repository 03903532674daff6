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

#include "truzz/scheduler.h"

#include <map>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "truzz/errors.h"

namespace truzz {
namespace {

using testing::Range;

// Input bytes are little-endian edge ids in pairs: {lo, hi, lo, hi, ...}.
std::vector<uint8_t> Encode(const std::vector<EdgeId>& edges) {
  std::vector<uint8_t> out;
  for (EdgeId e : edges) {
    out.push_back(static_cast<uint8_t>(e));
    out.push_back(static_cast<uint8_t>(e >> 8));
  }
  return out;
}

testing::FunctionExecutor EncodedExecutor() {
  return testing::FunctionExecutor([](std::span<const uint8_t> in) {
    std::set<EdgeId> s;
    for (size_t i = 0; i + 1 < in.size(); i += 2) s.insert(in[i] | (in[i + 1] << 8));
    return s;
  });
}

TEST(DryRunTest, DisjointSeedsBothRetained) {
  auto exec = EncodedExecutor();
  Corpus corpus;
  Bitmap overall(1024);
  const std::vector<std::vector<uint8_t>> seeds = {Encode(Range(0, 10)), Encode(Range(20, 5))};
  EXPECT_EQ(DryRun(seeds, exec, corpus, overall), 2u);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.entries()[0].rank_key, 10u);
  EXPECT_EQ(corpus.entries()[1].rank_key, 5u);
  EXPECT_EQ(overall.CoveredCount(), 15u);
}

TEST(DryRunTest, SubsetSeedDiscarded) {
  auto exec = EncodedExecutor();
  Corpus corpus;
  Bitmap overall(1024);
  const std::vector<std::vector<uint8_t>> seeds = {Encode(Range(0, 10)), Encode(Range(2, 3))};
  DryRun(seeds, exec, corpus, overall);
  EXPECT_EQ(corpus.size(), 1u);
}

TEST(DryRunTest, OverlappingSeedsRankedByNewEdges) {
  auto exec = EncodedExecutor();
  Corpus corpus;
  Bitmap overall(1024);
  const std::vector<std::vector<uint8_t>> seeds = {Encode(Range(1, 10)), Encode(Range(5, 8))};
  DryRun(seeds, exec, corpus, overall);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.entries()[0].rank_key, 10u);
  EXPECT_EQ(corpus.entries()[1].rank_key, 2u);
}

TEST(DryRunTest, EmptyCorpusIsCampaignError) {
  auto exec = EncodedExecutor();
  Corpus corpus;
  Bitmap overall(1024);
  const std::vector<std::vector<uint8_t>> none;
  EXPECT_THROW(DryRun(none, exec, corpus, overall), CampaignError);
  const std::vector<std::vector<uint8_t>> blank = {{}, {}};
  EXPECT_THROW(DryRun(blank, exec, corpus, overall), CampaignError);
}

TEST(SelectTest, MaxRankTiesToEarliest) {
  Corpus corpus;
  const SeedId a = corpus.Add({1}, Path({1}), 3).id;
  const SeedId b = corpus.Add({2}, Path({2}), 7).id;
  corpus.Add({3}, Path({3}), 7);
  EXPECT_NE(a, b);
  EXPECT_EQ(corpus.Select().id, b);
  EXPECT_EQ(corpus.Select().id, b);
}

TEST(SelectTest, SingleSeedAndEmpty) {
  Corpus corpus;
  EXPECT_THROW(corpus.Select(), PreconditionError);
  const SeedId a = corpus.Add({1}, Path({1}), 1).id;
  EXPECT_EQ(corpus.Select().id, a);
  EXPECT_EQ(corpus.Find(a)->times_selected, 1u);
}

TEST(SelectTest, FifoCycles) {
  Corpus corpus(Policy::kFifo);
  const SeedId a = corpus.Add({1}, Path({1}), 1).id;
  const SeedId b = corpus.Add({2}, Path({2}), 9).id;
  std::vector<SeedId> order;
  for (int i = 0; i < 4; ++i) order.push_back(corpus.Select().id);
  EXPECT_EQ(order, (std::vector<SeedId>{a, b, a, b}));
}

TEST(SelectTest, AllZeroRanksRoundRobin) {
  Corpus corpus;
  const SeedId a = corpus.Add({1}, Path({1}), 0).id;
  const SeedId b = corpus.Add({2}, Path({2}), 0).id;
  const SeedId c = corpus.Add({3}, Path({3}), 0).id;
  std::vector<SeedId> order;
  for (int i = 0; i < 6; ++i) order.push_back(corpus.Select().id);
  EXPECT_EQ(order, (std::vector<SeedId>{a, b, c, a, b, c}));
}

TEST(UpdateRankTest, ReplacesAndResorts) {
  Corpus corpus;
  const SeedId a = corpus.Add({1}, Path({1}), 10).id;
  const SeedId b = corpus.Add({2}, Path({2}), 4).id;
  corpus.UpdateRank(a, 0);
  EXPECT_EQ(corpus.RankedIds(), (std::vector<SeedId>{b, a}));
  corpus.UpdateRank(a, 50);
  EXPECT_EQ(corpus.RankedIds(), (std::vector<SeedId>{a, b}));
  corpus.UpdateRank(b, 5);
  corpus.UpdateRank(b, 2);
  EXPECT_EQ(corpus.Find(b)->rank_key, 2u);
  EXPECT_THROW(corpus.UpdateRank(999, 1), PreconditionError);
  EXPECT_TRUE(corpus.IsSorted());
}

TEST(RetainIfNewTest, KnownEdgesNotRetained) {
  Corpus corpus;
  const std::vector<EdgeId> e = {1, 2};
  Bitmap overall = Bitmap::FromEdges(64, e);
  ExecResult r(64);
  r.bitmap = Bitmap::FromEdges(64, e);
  const auto out = RetainIfNew(std::vector<uint8_t>{1}, r, overall, corpus);
  EXPECT_EQ(out.new_edges, 0u);
  EXPECT_FALSE(out.retained);
  EXPECT_TRUE(corpus.empty());
  EXPECT_EQ(overall.CoveredCount(), 2u);
}

TEST(RetainIfNewTest, NewEdgesRetainedWithCount) {
  Corpus corpus;
  Bitmap overall(64);
  ExecResult r(64);
  const std::vector<EdgeId> e = {4, 5, 6, 7};
  r.bitmap = Bitmap::FromEdges(64, e);
  const auto out = RetainIfNew(std::vector<uint8_t>{1}, r, overall, corpus);
  ASSERT_TRUE(out.retained);
  EXPECT_EQ(corpus.Find(*out.retained)->rank_key, 4u);
  EXPECT_EQ(corpus.Find(*out.retained)->path.size(), 4u);
}

TEST(RetainIfNewTest, CrashGoesToCrashStore) {
  Corpus corpus;
  Bitmap overall(64);
  ExecResult r(64);
  const std::vector<EdgeId> e = {9};
  r.bitmap = Bitmap::FromEdges(64, e);
  r.status = ExecStatus::kCrash;
  const auto out = RetainIfNew(std::vector<uint8_t>{7}, r, overall, corpus);
  EXPECT_TRUE(out.crash_stored);
  EXPECT_FALSE(out.retained);
  EXPECT_TRUE(corpus.empty());
  ASSERT_EQ(corpus.crashes().size(), 1u);
  EXPECT_EQ(overall.CoveredCount(), 1u);  // merged regardless
}

TEST(PolicyTest, Parse) {
  EXPECT_EQ(ParsePolicy("truzz"), Policy::kTruzz);
  EXPECT_EQ(ParsePolicy("fifo"), Policy::kFifo);
  EXPECT_THROW(ParsePolicy("afl"), ConfigError);
  SchedulerConfig cfg;
  cfg.energy = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

// Random add / select / update trace; sorted after every step, and Select
// matches a brute-force argmax.
TEST(SchedulerProperty, SortedAfterEveryRound) {
  std::mt19937_64 rng(17);
  Corpus corpus;
  for (int i = 0; i < 5; ++i) corpus.Add({uint8_t(i)}, Path({EdgeId(i)}), rng() % 20);
  for (int round = 0; round < 10000; ++round) {
    bool any_positive = false;
    uint64_t best_rank = 0;
    uint64_t best_order = UINT64_MAX;
    SeedId best = 0;
    for (const SeedEntry& e : corpus.entries()) {
      any_positive |= e.rank_key > 0;
      if (e.rank_key > best_rank || (e.rank_key == best_rank && e.insertion_order < best_order)) {
        best_rank = e.rank_key;
        best_order = e.insertion_order;
        best = e.id;
      }
    }
    SeedEntry& s = corpus.Select();
    if (any_positive) ASSERT_EQ(s.id, best);
    const int adds = rng() % 3 == 0 ? 1 + rng() % 2 : 0;
    for (int k = 0; k < adds; ++k) corpus.Add({1}, Path({1}), 1 + rng() % 30);
    corpus.UpdateRank(s.id, rng() % 4 == 0 ? 0 : rng() % 40);
    ASSERT_TRUE(corpus.IsSorted()) << "round " << round;
  }
}

TEST(SchedulerProperty, DryRunRanksMatchSetDifference) {
  std::mt19937_64 rng(23);
  auto exec = EncodedExecutor();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<uint8_t>> seeds;
    std::vector<std::set<EdgeId>> sets;
    const size_t n = 1 + rng() % 12;
    for (size_t i = 0; i < n; ++i) {
      std::set<EdgeId> s;
      const size_t k = rng() % 20;
      while (s.size() < k) s.insert(rng() % 60);
      sets.push_back(s);
      seeds.push_back(Encode(std::vector<EdgeId>(s.begin(), s.end())));
    }
    std::set<EdgeId> seen;
    std::vector<uint64_t> expected;
    for (const auto& s : sets) {
      uint64_t fresh = 0;
      for (EdgeId e : s) fresh += seen.count(e) == 0;
      if (fresh > 0) expected.push_back(fresh);
      seen.insert(s.begin(), s.end());
    }
    Corpus corpus;
    Bitmap overall(1024);
    if (expected.empty()) {
      EXPECT_THROW(DryRun(seeds, exec, corpus, overall), CampaignError);
      continue;
    }
    DryRun(seeds, exec, corpus, overall);
    std::vector<uint64_t> got;
    for (const SeedEntry& e : corpus.entries()) got.push_back(e.rank_key);
    ASSERT_EQ(got, expected);
    ASSERT_EQ(overall.CoveredCount(), seen.size());
    ASSERT_TRUE(corpus.IsSorted());
  }
}

}  // namespace
}  // namespace truzz
