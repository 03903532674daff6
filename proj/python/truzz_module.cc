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

// Python bindings: target specs, byte analysis, campaigns and reports.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "truzz/byte_analysis.h"
#include "truzz/engine.h"
#include "truzz/errors.h"
#include "truzz/report.h"
#include "truzz/scheduler.h"
#include "truzz/stats.h"
#include "truzz/target.h"

namespace py = pybind11;

namespace truzz {
namespace {

std::vector<uint8_t> ToBytes(const py::bytes& b) {
  const std::string s = b;
  return std::vector<uint8_t>(s.begin(), s.end());
}

Path ToPath(std::vector<EdgeId> edges) { return Path(std::move(edges)); }

py::dict StatsDict(const CampaignStats& s) {
  py::dict d;
  d["executions"] = s.executions;
  d["seeds"] = s.seeds;
  d["edges_covered"] = s.edges_covered;
  d["valid"] = s.valid;
  d["invalid"] = s.invalid;
  d["crashes"] = s.crashes;
  d["elapsed_s"] = s.elapsed_s;
  d["dry_run_executions"] = s.dry_run_executions;
  d["probe_executions"] = s.probe_executions;
  d["fuzz_executions"] = s.fuzz_executions;
  d["analyses"] = s.analyses;
  d["rounds"] = s.rounds;
  return d;
}

py::dict ExecDict(const ExecResult& r) {
  py::dict d;
  d["edges"] = PathFromBitmap(r.bitmap).edges();
  d["status"] = ExecStatusName(r.status);
  d["valid"] = r.valid;
  return d;
}

}  // namespace
}  // namespace truzz

PYBIND11_MODULE(_truzz, m) {
  using namespace truzz;
  m.doc() = "Coverage-guided fuzzing with byte analysis and new-edge seed ranking.";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ExecError>(m, "ExecError", base.ptr());
  py::register_exception<AnalysisError>(m, "AnalysisError", base.ptr());
  py::register_exception<CampaignError>(m, "CampaignError", base.ptr());

  py::class_<TargetSpec>(m, "TargetSpec")
      .def_readonly("input_length", &TargetSpec::input_length)
      .def_property_readonly("stage_ids",
                             [](const TargetSpec& t) {
                               std::vector<std::string> ids;
                               for (const Stage& s : t.stages) ids.push_back(s.id);
                               return ids;
                             })
      .def("edge_bound", &TargetSpec::EdgeBound)
      .def("execute",
           [](const TargetSpec& t, const py::bytes& input) {
             return ExecDict(ExecuteSynthetic(t, ToBytes(input)));
           },
           py::arg("input"), "Run an input; returns edges, status and validity.")
      .def("__str__", &FormatTargetSpec);

  m.def("parse_target_spec", &ParseTargetSpec, py::arg("text"));
  m.def("load_target_spec", &LoadTargetSpec, py::arg("path"));

  m.def("fitness",
        [](std::vector<EdgeId> seed_path, std::vector<EdgeId> probe_path) {
          return Fitness(ToPath(std::move(seed_path)), ToPath(std::move(probe_path)));
        },
        py::arg("seed_path"), py::arg("probe_path"));
  m.def("probe_mutate",
        [](const py::bytes& seed, size_t begin, size_t end) {
          const auto out = ProbeMutate(ToBytes(seed), begin, end);
          return py::bytes(reinterpret_cast<const char*>(out.data()), out.size());
        },
        py::arg("seed"), py::arg("begin"), py::arg("end"));
  m.def("analyze",
        [](const TargetSpec& spec, const py::bytes& seed, double threshold,
           size_t min_interval, double lower_bound) {
          AnalysisConfig cfg{threshold, min_interval, lower_bound};
          cfg.Validate();
          SyntheticExecutor exec(spec);
          const std::vector<uint8_t> bytes = ToBytes(seed);
          const Path path = PathFromBitmap(exec.Run(bytes).bitmap);
          const FitnessMap fm = Analyze(bytes, path, exec, cfg);
          py::dict d;
          d["fitness"] = fm.fitness;
          d["probability"] = MaskFromFitness(fm, cfg).probability;
          d["probe_count"] = fm.probe_count;
          return d;
        },
        py::arg("spec"), py::arg("seed"), py::arg("threshold") = 0.5,
        py::arg("min_interval") = 1, py::arg("lower_bound") = 0.05,
        "Byte analysis of one seed on a synthetic target.");

  m.def("a12",
        [](std::vector<double> a, std::vector<double> b) {
          const A12Result r = A12(a, b);
          return py::make_tuple(r.score, EffectSizeName(r.magnitude));
        },
        py::arg("sample1"), py::arg("sample2"), "Returns (score, magnitude).");
  m.def("compare_campaigns",
        [](const std::filesystem::path& a, const std::filesystem::path& b) {
          const CampaignComparison c = CompareCampaigns(ReadStatsCsv(a), ReadStatsCsv(b));
          py::dict d;
          d["valid_ratio_a"] = c.valid_ratio_a;
          d["valid_ratio_b"] = c.valid_ratio_b;
          d["valid_ratio_delta_points"] = c.valid_ratio_delta_points;
          d["edges_a"] = c.edges_a;
          d["edges_b"] = c.edges_b;
          d["edges_delta_percent"] = c.edges_delta_percent;
          py::list series;
          for (const CoveragePoint& p : c.series) {
            series.append(py::make_tuple(p.executions, p.edges_a, p.edges_b));
          }
          d["series"] = series;
          return d;
        },
        py::arg("stats_a"), py::arg("stats_b"));

  m.def("run_campaign",
        [](std::filesystem::path corpus_dir, std::filesystem::path target,
           std::vector<std::string> command, uint64_t budget_execs, double budget_secs,
           size_t energy, const std::string& policy, bool mask, double threshold,
           size_t min_interval, double lower_bound, uint64_t rng_seed, uint64_t stats_interval,
           bool resume) {
          CampaignConfig cfg;
          cfg.corpus_dir = std::move(corpus_dir);
          cfg.target_spec = std::move(target);
          cfg.target_command = std::move(command);
          cfg.budget = {budget_execs, budget_secs};
          cfg.scheduler.energy = energy;
          cfg.scheduler.policy = ParsePolicy(policy);
          cfg.mask = mask;
          cfg.analysis = {threshold, min_interval, lower_bound};
          cfg.rng_seed = rng_seed;
          cfg.stats_interval = stats_interval;
          cfg.resume = resume;
          CampaignResult r;
          {
            py::gil_scoped_release release;
            r = RunCampaign(cfg);
          }
          py::dict d = StatsDict(r.stats);
          d["retained_ids"] = r.retained_ids;
          d["interrupted"] = r.interrupted;
          return d;
        },
        py::arg("corpus_dir"), py::kw_only(), py::arg("target") = std::filesystem::path(),
        py::arg("command") = std::vector<std::string>{}, py::arg("budget_execs") = 0,
        py::arg("budget_secs") = 0.0, py::arg("energy") = 1024, py::arg("policy") = "truzz",
        py::arg("mask") = true, py::arg("threshold") = 0.5, py::arg("min_interval") = 1,
        py::arg("lower_bound") = 0.05, py::arg("rng_seed") = 0,
        py::arg("stats_interval") = 1000, py::arg("resume") = false,
        "Runs a campaign over corpus_dir/seeds_in and returns its final stats.");

  m.def("replay",
        [](const std::filesystem::path& input, const std::filesystem::path& target,
           std::optional<std::filesystem::path> overall_cov) {
          SyntheticExecutor exec(LoadTargetSpec(target));
          const ReplayReport r = Replay(input, exec, overall_cov);
          py::dict d;
          d["status"] = ExecStatusName(r.status);
          d["valid"] = r.valid;
          d["edges"] = r.path.edges();
          d["new_edges"] = r.new_edges;
          d["warnings"] = r.warnings;
          return d;
        },
        py::arg("input"), py::arg("target"), py::arg("overall_cov") = py::none());

  m.attr("STATS_HEADER") = kStatsHeader;
}
