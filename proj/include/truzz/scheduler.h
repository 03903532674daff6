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

// Ranked seed corpus.
//
// Each seed's rank key is the number of new edges it contributed: at
// retention, the edges its own execution added to global coverage; after
// each of its fuzzing rounds, the new edges found by that whole round
// (replacing, not accumulating). The TRUZZ policy always fuzzes the top
// seed; FIFO cycles through seeds in insertion order as a baseline.

#ifndef TRUZZ_SCHEDULER_H_
#define TRUZZ_SCHEDULER_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "truzz/byte_analysis.h"
#include "truzz/coverage.h"
#include "truzz/target.h"

namespace truzz {

enum class Policy { kTruzz, kFifo };

const char* PolicyName(Policy policy);
// Accepts "truzz" or "fifo"; throws ConfigError otherwise.
Policy ParsePolicy(const std::string& name);

struct SchedulerConfig {
  size_t energy = 1024;  // mutations per selected seed per round
  Policy policy = Policy::kTruzz;

  void Validate() const;
};

using SeedId = uint64_t;

struct SeedAnalysis {
  FitnessMap fitness;
  MutationMask mask;
};

struct SeedEntry {
  SeedId id = 0;
  std::vector<uint8_t> bytes;
  Path path;  // recorded at retention, fixed afterwards
  uint64_t rank_key = 0;
  uint64_t insertion_order = 0;
  std::optional<SeedAnalysis> analysis;  // filled on first selection
  uint64_t times_selected = 0;
};

struct CrashRecord {
  std::vector<uint8_t> bytes;
  ExecStatus status = ExecStatus::kCrash;
};

class Corpus {
 public:
  explicit Corpus(Policy policy = Policy::kTruzz) : policy_(policy) {}

  Policy policy() const { return policy_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  // Appends a seed with the next id; keeps the ranked order sorted.
  // References returned by Add/Select/Find stay valid while the corpus lives.
  SeedEntry& Add(std::vector<uint8_t> bytes, Path path, uint64_t rank_key);

  // Re-inserts a persisted entry verbatim (resume). Ids must be unique;
  // later Add calls continue after the largest id/insertion order seen.
  SeedEntry& Restore(SeedEntry entry);

  // TRUZZ: highest rank key, ties to the earliest insertion; when every
  // seed has rank 0, round-robin over insertion order. FIFO: round-robin
  // over insertion order. Throws PreconditionError on an empty corpus.
  SeedEntry& Select();

  // Replaces the seed's rank key and re-sorts. Throws PreconditionError if
  // `id` is not in the corpus.
  void UpdateRank(SeedId id, uint64_t n_all);

  SeedEntry* Find(SeedId id);
  const SeedEntry* Find(SeedId id) const;

  // Entries in insertion order.
  const std::deque<SeedEntry>& entries() const { return entries_; }
  // Ids ordered by (rank_key desc, insertion_order asc).
  std::vector<SeedId> RankedIds() const;
  bool IsSorted() const;

  void AddCrash(CrashRecord crash) { crashes_.push_back(std::move(crash)); }
  const std::vector<CrashRecord>& crashes() const { return crashes_; }

 private:
  bool RankedBefore(size_t a, size_t b) const;
  void InsertRanked(size_t index);
  size_t IndexOf(SeedId id) const;
  SeedEntry& NextRoundRobin(size_t& cursor);

  Policy policy_;
  std::deque<SeedEntry> entries_;  // insertion order; never reordered
  std::vector<size_t> ranked_;     // indices into entries_
  std::unordered_map<SeedId, size_t> index_of_;
  size_t fifo_cursor_ = 0;
  size_t zero_rank_cursor_ = 0;
  SeedId next_id_ = 0;
  uint64_t next_insertion_ = 0;
  std::vector<CrashRecord> crashes_;
};

// Executes the initial seeds in order, retaining each one that adds new
// edges (against `overall`, normally empty on entry) with its new-edge count
// as rank key, and merging every result into `overall`. Returns the number
// of executions. Throws CampaignError if no seed is retained.
size_t DryRun(std::span<const std::vector<uint8_t>> initial_seeds,
              Executor& executor, Corpus& corpus, Bitmap& overall);

struct RetainOutcome {
  size_t new_edges = 0;
  std::optional<SeedId> retained;  // set when added to the corpus
  bool crash_stored = false;
};

// Counts the result's new edges against `overall`, retains the input if
// there are any (crashes and timeouts go to the crash store instead), then
// merges the result into `overall` unconditionally.
RetainOutcome RetainIfNew(std::span<const uint8_t> input,
                          const ExecResult& result, Bitmap& overall,
                          Corpus& corpus);

}  // namespace truzz

#endif  // TRUZZ_SCHEDULER_H_
