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

// The fuzzing campaign loop.
//
//   dry run over the initial seeds
//   repeat until the budget runs out:
//     pick a seed
//     on its first selection, run byte analysis and cache the mask
//     energy times: mutate under the mask, execute, retain if new coverage
//     replace the seed's rank with the new edges its round found
//
// Byte-analysis probes are real executions and count against the budget.
// With policy FIFO and the mask off the loop is a plain vanilla fuzzer that
// uses the same random stream, which is what A/B comparisons run against.

#ifndef TRUZZ_ENGINE_H_
#define TRUZZ_ENGINE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "truzz/byte_analysis.h"
#include "truzz/corpus_store.h"
#include "truzz/coverage.h"
#include "truzz/mutation.h"
#include "truzz/scheduler.h"
#include "truzz/stats.h"
#include "truzz/target.h"

namespace truzz {

struct Budget {
  uint64_t max_executions = 0;  // 0 = no execution limit
  double max_seconds = 0;       // 0 = no time limit
};

struct CampaignConfig {
  // Exactly one of target_spec / target_command.
  std::filesystem::path target_spec;
  std::vector<std::string> target_command;
  double exec_timeout_s = 1.0;
  size_t map_size = kDefaultMapSize;

  SchedulerConfig scheduler;
  AnalysisConfig analysis;
  bool mask = true;  // run byte analysis and gate mutations
  uint64_t rng_seed = 0;
  Budget budget;
  uint64_t stats_interval = 1000;

  // Empty: keep everything in memory (RunCampaign requires a directory).
  std::filesystem::path corpus_dir;
  bool resume = false;

  // Seconds since campaign start; defaults to a steady clock. Also drives
  // budget.max_seconds.
  std::function<double()> clock;

  // Throws ConfigError on a zero budget, zero stats interval, both or
  // neither target kinds (only when `need_target`), or bad sub-configs.
  void Validate(bool need_target = true) const;
};

struct CampaignStats {
  uint64_t executions = 0;
  uint64_t seeds = 0;
  uint64_t edges_covered = 0;
  uint64_t valid = 0;    // synthetic targets only
  uint64_t invalid = 0;  // synthetic targets only
  uint64_t crashes = 0;
  double elapsed_s = 0;

  // executions = dry_run + probe + fuzz executions.
  uint64_t dry_run_executions = 0;
  uint64_t probe_executions = 0;
  uint64_t fuzz_executions = 0;
  uint64_t analyses = 0;
  uint64_t rounds = 0;

  double ValidRatio() const {
    const uint64_t n = valid + invalid;
    return n == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(n);
  }
  StatsRow Row() const {
    return {elapsed_s, executions, seeds, edges_covered, valid, invalid, crashes};
  }
};

struct CampaignResult {
  CampaignStats stats;
  std::vector<StatsRow> rows;          // as written to stats.csv
  std::vector<SeedId> retained_ids;    // in retention order, dry run included
  bool interrupted = false;
};

// Process-wide stop request, set from signal handlers; running campaigns
// finish the current execution, flush, and return.
void RequestStop();
void ClearStopRequest();
bool StopRequested();

class Campaign {
 public:
  // `executor` must outlive the campaign.
  Campaign(CampaignConfig config, Executor& executor);
  ~Campaign();
  Campaign(const Campaign&) = delete;
  Campaign& operator=(const Campaign&) = delete;

  // Fresh campaign from in-memory initial seeds.
  CampaignResult Run(const std::vector<std::vector<uint8_t>>& initial_seeds);
  // Continues the campaign persisted in config.corpus_dir.
  CampaignResult Resume();

  const Corpus& corpus() const { return corpus_; }
  const Bitmap& overall() const { return overall_; }

 private:
  class CountingExecutor;
  struct BudgetExhausted {};
  enum class Phase { kDryRun, kProbe, kFuzz };

  void Execute(std::span<const uint8_t> input, ExecResult& out, Phase phase);
  bool BudgetLeft() const;
  double Now() const;
  void Loop();
  void FuzzRound();
  const MutationMask& MaskFor(SeedEntry& seed);
  void OnRetained(SeedId id);
  void OnCrash();
  void EmitRow();
  void FlushDueRow();
  void SaveState() const;
  void LoadState();
  void Persist();
  CampaignResult Finish();

  CampaignConfig config_;
  Executor& executor_;
  std::unique_ptr<CountingExecutor> counting_;
  std::optional<CorpusStore> store_;
  Corpus corpus_;
  Bitmap overall_;
  Rng rng_;
  ExecResult exec_;
  CampaignStats stats_;
  std::vector<StatsRow> rows_;
  std::vector<SeedId> retained_ids_;
  std::vector<MutationMask> uniform_masks_;  // indexed by seed length
  std::function<double()> clock_;
  double elapsed_offset_ = 0;
  uint64_t consecutive_failures_ = 0;
  bool interrupted_ = false;
  bool row_due_ = false;
  std::unique_ptr<std::ofstream> stats_out_;
};

// Builds the executor from the config, loads corpus_dir/seeds_in (or the
// persisted queue when resuming), runs, and persists.
CampaignResult RunCampaign(const CampaignConfig& config);

std::unique_ptr<Executor> MakeExecutor(const CampaignConfig& config);

struct ReplayReport {
  ExecStatus status = ExecStatus::kNormal;
  std::optional<bool> valid;
  Path path;
  std::optional<uint64_t> new_edges;  // vs. the stored overall coverage
  std::vector<std::string> warnings;
};

// Executes `input_file` once. When `overall_cov` is given, new edges are
// counted against it.
ReplayReport Replay(const std::filesystem::path& input_file, Executor& executor,
                    const std::optional<std::filesystem::path>& overall_cov);

std::string FormatReplayReport(const ReplayReport& report, bool show_path);

}  // namespace truzz

#endif  // TRUZZ_ENGINE_H_
