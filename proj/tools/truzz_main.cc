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

// truzz command-line tool: fuzz, analyze, replay, report.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "truzz/byte_analysis.h"
#include "truzz/corpus_store.h"
#include "truzz/engine.h"
#include "truzz/errors.h"
#include "truzz/report.h"
#include "truzz/target.h"

namespace {

using namespace truzz;

struct TargetFlags {
  std::string spec;
  std::string cmd;
  double timeout_s = 1.0;
  size_t map_size = kDefaultMapSize;

  void Register(CLI::App* app) {
    auto* spec_opt = app->add_option("--target", spec, "synthetic target spec file");
    auto* cmd_opt = app->add_option(
        "--cmd", cmd, "external target command line, with @@ for the input file");
    spec_opt->excludes(cmd_opt);
    app->add_option("--timeout", timeout_s, "external execution timeout in seconds");
    app->add_option("--map-size", map_size, "coverage map size");
  }

  void Apply(CampaignConfig& cfg) const {
    cfg.target_spec = spec;
    cfg.target_command = SplitCommandLine(cmd);
    cfg.exec_timeout_s = timeout_s;
    cfg.map_size = map_size;
  }

  std::unique_ptr<Executor> Make() const {
    CampaignConfig cfg;
    Apply(cfg);
    if (cfg.target_spec.empty() == cfg.target_command.empty()) {
      throw ConfigError("give exactly one of --target or --cmd");
    }
    return MakeExecutor(cfg);
  }
};

void AddAnalysisFlags(CLI::App* app, AnalysisConfig& cfg) {
  app->add_option("--threshold", cfg.threshold, "fitness threshold t")
      ->capture_default_str();
  app->add_option("--min-interval", cfg.min_interval, "minimum interval length l")
      ->capture_default_str();
  app->add_option("--lp", cfg.lower_bound, "mutation probability floor")
      ->capture_default_str();
}

void HandleSigint(int) { RequestStop(); }

int RunFuzz(const TargetFlags& target, CampaignConfig cfg,
            const std::string& policy, const std::string& mask) {
  target.Apply(cfg);
  cfg.scheduler.policy = ParsePolicy(policy);
  cfg.mask = mask == "on";
  std::signal(SIGINT, HandleSigint);
  std::signal(SIGTERM, HandleSigint);
  const CampaignResult result = RunCampaign(cfg);
  const CampaignStats& s = result.stats;
  std::printf("%s after %llu executions\n",
              result.interrupted ? "interrupted" : "finished",
              static_cast<unsigned long long>(s.executions));
  std::printf("seeds: %llu\nedges_covered: %llu\ncrashes: %llu\n",
              static_cast<unsigned long long>(s.seeds),
              static_cast<unsigned long long>(s.edges_covered),
              static_cast<unsigned long long>(s.crashes));
  if (s.valid + s.invalid > 0) {
    std::printf("valid_ratio: %.2f%% (%llu valid, %llu invalid)\n",
                100.0 * s.ValidRatio(), static_cast<unsigned long long>(s.valid),
                static_cast<unsigned long long>(s.invalid));
  }
  std::printf("executions: dry_run=%llu probes=%llu fuzz=%llu (analyses=%llu)\n",
              static_cast<unsigned long long>(s.dry_run_executions),
              static_cast<unsigned long long>(s.probe_executions),
              static_cast<unsigned long long>(s.fuzz_executions),
              static_cast<unsigned long long>(s.analyses));
  return 0;
}

int RunAnalyze(const TargetFlags& target, const std::string& input,
               const AnalysisConfig& cfg) {
  auto executor = target.Make();
  const std::vector<uint8_t> seed = ReadFileBytes(input);
  const ExecResult seed_result = executor->Run(seed);
  const Path seed_path = PathFromBitmap(seed_result.bitmap);
  const FitnessMap fitness = Analyze(seed, seed_path, *executor, cfg);
  const MutationMask mask = MaskFromFitness(fitness, cfg);
  std::printf("seed_path_size: %zu\nprobe_count: %zu\n", seed_path.size(),
              fitness.probe_count);
  std::printf("index\tbyte\tfitness\tprobability\n");
  for (size_t i = 0; i < seed.size(); ++i) {
    std::printf("%zu\t0x%02x\t%.6f\t%.6f\n", i, seed[i], fitness.fitness[i],
                mask.probability[i]);
  }
  return 0;
}

int RunReplay(const TargetFlags& target, const std::string& input,
              const std::string& corpus, bool show_path) {
  auto executor = target.Make();
  std::optional<std::filesystem::path> overall;
  if (!corpus.empty()) overall = CorpusStore(corpus).overall_cov();
  const ReplayReport report = Replay(input, *executor, overall);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  ReplayReport quiet = report;
  quiet.warnings.clear();
  std::cout << FormatReplayReport(quiet, show_path);
  return 0;
}

int RunCompare(const std::string& a, const std::string& b) {
  const auto rows_a = ReadStatsCsv(a);
  const auto rows_b = ReadStatsCsv(b);
  std::cout << FormatComparison(CompareCampaigns(rows_a, rows_b));
  return 0;
}

int RunA12(const std::string& metric, const std::string& dir_a,
           const std::string& dir_b) {
  const auto a = CollectFinalMetric(dir_a, metric);
  const auto b = CollectFinalMetric(dir_b, metric);
  const A12Result r = A12(a, b);
  std::printf("metric: %s\nruns: %zu vs %zu\nA12: %.4f\nmagnitude: %s\n",
              metric.c_str(), a.size(), b.size(), r.score,
              EffectSizeName(r.magnitude));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truzz: coverage-guided fuzzing with validation-byte protection "
               "and new-edge seed prioritization"};
  app.require_subcommand(1);

  // fuzz
  TargetFlags fuzz_target;
  CampaignConfig fuzz_cfg;
  std::string policy = "truzz";
  std::string mask = "on";
  auto* fuzz = app.add_subcommand("fuzz", "run a fuzzing campaign");
  fuzz_target.Register(fuzz);
  fuzz->add_option("--corpus", fuzz_cfg.corpus_dir,
                   "corpus directory (initial seeds in seeds_in/)")
      ->required();
  fuzz->add_option("--budget-execs", fuzz_cfg.budget.max_executions,
                   "maximum executions (0 = unlimited)");
  fuzz->add_option("--budget-secs", fuzz_cfg.budget.max_seconds,
                   "wall-clock limit in seconds (0 = unlimited)");
  fuzz->add_option("--energy", fuzz_cfg.scheduler.energy, "mutations per selected seed")
      ->capture_default_str();
  fuzz->add_option("--policy", policy, "seed selection policy")
      ->check(CLI::IsMember({"truzz", "fifo"}))
      ->capture_default_str();
  fuzz->add_option("--mask", mask, "byte analysis and mask-gated mutation")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  AddAnalysisFlags(fuzz, fuzz_cfg.analysis);
  fuzz->add_option("--rng-seed", fuzz_cfg.rng_seed, "random seed")->capture_default_str();
  fuzz->add_option("--stats-interval", fuzz_cfg.stats_interval,
                   "executions between stats rows")
      ->capture_default_str();
  fuzz->add_flag("--resume", fuzz_cfg.resume, "continue the campaign in --corpus");

  // analyze
  TargetFlags analyze_target;
  AnalysisConfig analyze_cfg;
  std::string analyze_input;
  auto* analyze = app.add_subcommand("analyze", "byte analysis of one seed");
  analyze_target.Register(analyze);
  AddAnalysisFlags(analyze, analyze_cfg);
  analyze->add_option("seed", analyze_input, "seed file")->required();

  // replay
  TargetFlags replay_target;
  std::string replay_input;
  std::string replay_corpus;
  bool show_path = false;
  auto* replay = app.add_subcommand("replay", "execute one input and report");
  replay_target.Register(replay);
  replay->add_option("input", replay_input, "input file")->required();
  replay->add_option("--corpus", replay_corpus,
                     "corpus directory whose overall.cov new edges are counted against");
  replay->add_flag("--show-path", show_path, "list the covered edge ids");

  // report
  auto* report = app.add_subcommand("report", "post-campaign analysis");
  report->require_subcommand(1);
  std::string compare_a, compare_b;
  auto* compare = report->add_subcommand("compare", "compare two stats.csv files");
  compare->add_option("a", compare_a, "baseline stats.csv")->required();
  compare->add_option("b", compare_b, "candidate stats.csv")->required();
  std::string metric = "edges_covered";
  std::string a12_a, a12_b;
  auto* a12 = report->add_subcommand("a12", "Vargha-Delaney A12 over repeated runs");
  a12->add_option("--metric", metric, "stats column")->capture_default_str();
  a12->add_option("dir_a", a12_a, "runs of population 1")->required();
  a12->add_option("dir_b", a12_b, "runs of population 2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fuzz) return RunFuzz(fuzz_target, fuzz_cfg, policy, mask);
    if (*analyze) return RunAnalyze(analyze_target, analyze_input, analyze_cfg);
    if (*replay) return RunReplay(replay_target, replay_input, replay_corpus, show_path);
    if (*compare) return RunCompare(compare_a, compare_b);
    if (*a12) return RunA12(metric, a12_a, a12_b);
  } catch (const truzz::Error& e) {
    std::cerr << "truzz: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
