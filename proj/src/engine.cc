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

#include "truzz/engine.h"

#include <atomic>
#include <chrono>
#include <map>
#include <sstream>

#include "truzz/errors.h"

namespace truzz {
namespace {

namespace fs = std::filesystem;

// Consecutive executor failures tolerated before a campaign aborts.
constexpr uint64_t kMaxExecRetries = 3;

std::atomic<bool> g_stop_requested{false};

}  // namespace

void RequestStop() { g_stop_requested.store(true); }
void ClearStopRequest() { g_stop_requested.store(false); }
bool StopRequested() { return g_stop_requested.load(); }

void CampaignConfig::Validate(bool need_target) const {
  if (need_target) {
    const bool has_spec = !target_spec.empty();
    const bool has_cmd = !target_command.empty();
    if (has_spec == has_cmd) {
      throw ConfigError("set exactly one of a target spec or a target command");
    }
  }
  if (budget.max_executions == 0 && budget.max_seconds <= 0) {
    throw ConfigError("campaign budget must be positive");
  }
  if (budget.max_seconds < 0) throw ConfigError("negative time budget");
  if (stats_interval == 0) throw ConfigError("stats interval must be >= 1");
  if (map_size == 0) throw ConfigError("map size must be >= 1");
  if (exec_timeout_s <= 0) throw ConfigError("execution timeout must be positive");
  scheduler.Validate();
  analysis.Validate();
}

// Routes byte-analysis probes through the campaign's accounting.
class Campaign::CountingExecutor : public Executor {
 public:
  CountingExecutor(Campaign& campaign, Phase phase)
      : campaign_(campaign), phase_(phase) {}

  using Executor::Run;
  void Run(std::span<const uint8_t> input, ExecResult& out) override {
    campaign_.Execute(input, out, phase_);
  }
  size_t map_size() const override { return campaign_.executor_.map_size(); }
  bool synthetic() const override { return campaign_.executor_.synthetic(); }
  void set_phase(Phase phase) { phase_ = phase; }

 private:
  Campaign& campaign_;
  Phase phase_;
};

Campaign::Campaign(CampaignConfig config, Executor& executor)
    : config_(std::move(config)),
      executor_(executor),
      counting_(std::make_unique<CountingExecutor>(*this, Phase::kProbe)),
      corpus_(config_.scheduler.policy),
      overall_(executor.map_size()),
      rng_(config_.rng_seed),
      exec_(executor.map_size()) {
  config_.Validate(/*need_target=*/false);
  if (config_.clock) {
    clock_ = config_.clock;
  } else {
    const auto start = std::chrono::steady_clock::now();
    clock_ = [start] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
    };
  }
  if (!config_.corpus_dir.empty()) {
    store_.emplace(config_.corpus_dir);
    store_->Prepare(config_.resume);
  }
}

Campaign::~Campaign() = default;

double Campaign::Now() const { return elapsed_offset_ + clock_(); }

bool Campaign::BudgetLeft() const {
  if (config_.budget.max_executions != 0 &&
      stats_.executions >= config_.budget.max_executions) {
    return false;
  }
  if (config_.budget.max_seconds > 0 && Now() >= config_.budget.max_seconds) {
    return false;
  }
  return true;
}

void Campaign::Execute(std::span<const uint8_t> input, ExecResult& out,
                       Phase phase) {
  FlushDueRow();
  if (StopRequested()) {
    interrupted_ = true;
    throw BudgetExhausted{};
  }
  if (!BudgetLeft()) throw BudgetExhausted{};
  for (;;) {
    try {
      executor_.Run(input, out);
      consecutive_failures_ = 0;
      break;
    } catch (const Error& e) {
      if (++consecutive_failures_ > kMaxExecRetries) {
        EmitRow();
        Persist();
        throw CampaignError(std::string("executor failed ") +
                            std::to_string(consecutive_failures_) +
                            " times in a row: " + e.what());
      }
    }
  }
  ++stats_.executions;
  switch (phase) {
    case Phase::kDryRun:
      ++stats_.dry_run_executions;
      break;
    case Phase::kProbe:
      ++stats_.probe_executions;
      break;
    case Phase::kFuzz:
      ++stats_.fuzz_executions;
      break;
  }
  if (out.valid.has_value()) {
    ++(*out.valid ? stats_.valid : stats_.invalid);
  }
  if (stats_.executions % config_.stats_interval == 0) row_due_ = true;
}

void Campaign::FlushDueRow() {
  if (!row_due_) return;
  row_due_ = false;
  EmitRow();
}

void Campaign::EmitRow() {
  stats_.elapsed_s = Now();
  stats_.seeds = corpus_.size();
  stats_.edges_covered = overall_.CoveredCount();
  const StatsRow row = stats_.Row();
  if (!rows_.empty() && rows_.back().executions == row.executions) return;
  rows_.push_back(row);
  if (stats_out_) {
    *stats_out_ << FormatStatsRow(row) << "\n";
    stats_out_->flush();
  }
}

const MutationMask& Campaign::MaskFor(SeedEntry& seed) {
  const size_t length = seed.bytes.size();
  if (config_.mask && !seed.analysis && length > 0) {
    counting_->set_phase(Phase::kProbe);
    FitnessMap fitness = Analyze(seed.bytes, seed.path, *counting_, config_.analysis);
    ++stats_.analyses;
    MutationMask mask = MaskFromFitness(fitness, config_.analysis);
    seed.analysis = SeedAnalysis{std::move(fitness), std::move(mask)};
  }
  if (config_.mask && seed.analysis) return seed.analysis->mask;
  if (uniform_masks_.size() <= length) uniform_masks_.resize(length + 1);
  if (uniform_masks_[length].probability.size() != length) {
    uniform_masks_[length] = MutationMask::Uniform(length);
  }
  return uniform_masks_[length];
}

void Campaign::OnRetained(SeedId id) {
  retained_ids_.push_back(id);
  if (store_) store_->WriteSeed(*corpus_.Find(id));
}

void Campaign::OnCrash() {
  ++stats_.crashes;
  if (store_) store_->WriteCrash(stats_.crashes, corpus_.crashes().back());
}

void Campaign::FuzzRound() {
  SeedEntry& seed = corpus_.Select();
  uint64_t n_all = 0;
  bool exhausted = false;
  try {
    const MutationMask& mask = MaskFor(seed);
    for (size_t i = 0; i < config_.scheduler.energy; ++i) {
      const size_t ops = DrawStackDepth(rng_);
      std::vector<uint8_t> child = Mutate(seed.bytes, mask, rng_, ops);
      Execute(child, exec_, Phase::kFuzz);
      const RetainOutcome outcome = RetainIfNew(child, exec_, overall_, corpus_);
      n_all += outcome.new_edges;
      if (outcome.retained) OnRetained(*outcome.retained);
      if (outcome.crash_stored) OnCrash();
    }
  } catch (const BudgetExhausted&) {
    exhausted = true;
  }
  corpus_.UpdateRank(seed.id, n_all);
  ++stats_.rounds;
  if (exhausted) throw BudgetExhausted{};
}

void Campaign::Loop() {
  try {
    for (;;) FuzzRound();
  } catch (const BudgetExhausted&) {
  }
}

CampaignResult Campaign::Run(const std::vector<std::vector<uint8_t>>& initial_seeds) {
  if (config_.resume) throw ConfigError("Run() starts a fresh campaign; use Resume()");
  if (store_) {
    stats_out_ = std::make_unique<std::ofstream>(store_->stats_csv(), std::ios::trunc);
    *stats_out_ << kStatsHeader << "\n";
  }
  try {
    counting_->set_phase(Phase::kDryRun);
    auto record_crashes = [this] {
      for (const CrashRecord& crash : corpus_.crashes()) {
        ++stats_.crashes;
        if (store_) store_->WriteCrash(stats_.crashes, crash);
      }
    };
    try {
      DryRun(initial_seeds, *counting_, corpus_, overall_);
    } catch (const BudgetExhausted&) {
      if (corpus_.empty()) {
        record_crashes();
        throw CampaignError("budget exhausted before any initial seed was retained");
      }
    } catch (const CampaignError&) {
      record_crashes();
      throw;
    }
    for (const SeedEntry& e : corpus_.entries()) OnRetained(e.id);
    record_crashes();
    Loop();
  } catch (const Error&) {
    Persist();
    throw;
  }
  return Finish();
}

void Campaign::SaveState() const {
  std::ofstream out(store_->state_file(), std::ios::trunc);
  out << "executions = " << stats_.executions << "\n"
      << "valid = " << stats_.valid << "\n"
      << "invalid = " << stats_.invalid << "\n"
      << "crashes = " << stats_.crashes << "\n"
      << "dry_run_executions = " << stats_.dry_run_executions << "\n"
      << "probe_executions = " << stats_.probe_executions << "\n"
      << "fuzz_executions = " << stats_.fuzz_executions << "\n"
      << "analyses = " << stats_.analyses << "\n"
      << "rounds = " << stats_.rounds << "\n"
      << "elapsed_s = " << stats_.elapsed_s << "\n"
      << "rng = " << rng_.SaveState() << "\n";
}

void Campaign::LoadState() {
  std::ifstream in(store_->state_file());
  if (!in) throw CampaignError("no campaign state in " + store_->root().string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  auto get = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw CampaignError(std::string("campaign state lacks ") + key);
    return it->second;
  };
  auto u64 = [&](const char* key) { return std::stoull(get(key)); };
  stats_.executions = u64("executions");
  stats_.valid = u64("valid");
  stats_.invalid = u64("invalid");
  stats_.crashes = u64("crashes");
  stats_.dry_run_executions = u64("dry_run_executions");
  stats_.probe_executions = u64("probe_executions");
  stats_.fuzz_executions = u64("fuzz_executions");
  stats_.analyses = u64("analyses");
  stats_.rounds = u64("rounds");
  elapsed_offset_ = std::stod(get("elapsed_s"));
  rng_.LoadState(get("rng"));
}

CampaignResult Campaign::Resume() {
  if (!store_) throw ConfigError("resuming needs a corpus directory");
  LoadState();
  for (SeedEntry& e : store_->LoadSeeds()) corpus_.Restore(std::move(e));
  if (corpus_.empty()) throw CampaignError("nothing to resume: queue is empty");
  overall_ = store_->ReadOverall(executor_.map_size());
  stats_out_ = std::make_unique<std::ofstream>(store_->stats_csv(), std::ios::app);
  try {
    Loop();
  } catch (const Error&) {
    Persist();
    throw;
  }
  return Finish();
}

void Campaign::Persist() {
  if (!store_) return;
  for (const SeedEntry& e : corpus_.entries()) store_->WriteMeta(e);
  store_->WriteOverall(overall_);
  SaveState();
  if (stats_out_) stats_out_->flush();
}

CampaignResult Campaign::Finish() {
  row_due_ = false;
  EmitRow();
  Persist();
  CampaignResult result;
  result.stats = stats_;
  result.rows = rows_;
  result.retained_ids = retained_ids_;
  result.interrupted = interrupted_;
  return result;
}

std::unique_ptr<Executor> MakeExecutor(const CampaignConfig& config) {
  if (!config.target_spec.empty()) {
    return std::make_unique<SyntheticExecutor>(LoadTargetSpec(config.target_spec),
                                               config.map_size);
  }
  const auto timeout = std::chrono::milliseconds(
      static_cast<int64_t>(config.exec_timeout_s * 1000.0));
  return std::make_unique<ExternalExecutor>(config.target_command, timeout,
                                            config.map_size);
}

CampaignResult RunCampaign(const CampaignConfig& config) {
  config.Validate();
  if (config.corpus_dir.empty()) throw ConfigError("a corpus directory is required");
  auto executor = MakeExecutor(config);
  Campaign campaign(config, *executor);
  if (config.resume) return campaign.Resume();
  return campaign.Run(CorpusStore(config.corpus_dir).LoadInitialSeeds());
}

ReplayReport Replay(const fs::path& input_file, Executor& executor,
                    const std::optional<fs::path>& overall_cov) {
  if (!fs::is_regular_file(input_file)) {
    throw ConfigError("input file not found: " + input_file.string());
  }
  const std::vector<uint8_t> bytes = ReadFileBytes(input_file);
  const ExecResult result = executor.Run(bytes);

  ReplayReport report;
  report.status = result.status;
  report.valid = result.valid;
  report.path = PathFromBitmap(result.bitmap);
  if (overall_cov) {
    const Bitmap overall = ReadEdgeList(*overall_cov, executor.map_size());
    report.new_edges = CountNewEdges(result.bitmap, overall);
  }
  if (executor.synthetic() &&
      input_file.parent_path().filename() == "crashes") {
    report.warnings.push_back(
        "synthetic targets cannot crash; this input replays as NORMAL");
  }
  return report;
}

std::string FormatReplayReport(const ReplayReport& report, bool show_path) {
  std::ostringstream out;
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  out << "status: " << ExecStatusName(report.status) << "\n";
  out << "path_size: " << report.path.size() << "\n";
  if (report.new_edges) out << "new_edges: " << *report.new_edges << "\n";
  out << "valid: "
      << (report.valid ? (*report.valid ? "true" : "false") : "n/a") << "\n";
  if (show_path) {
    out << "path:";
    for (EdgeId e : report.path.edges()) out << " " << e;
    out << "\n";
  }
  return out.str();
}

}  // namespace truzz
