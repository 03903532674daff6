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

// Programs under test.
//
// A synthetic target is a declarative chain of stages. Each stage may carry a
// check on a contiguous byte range of the input; the check decides whether
// the stage's pass region or fail region is traversed. A failed VALIDATION
// check is error handling: its fail region is terminal and the input is
// invalid. A failed NON_VALIDATION check just takes an alternative functional
// branch. Regions are runs of consecutive edge ids, so the synthetic bitmap
// is collision-free. The text format is documented in docs/target_spec.md.
//
// External targets are real binaries that write the edges they hit, one
// decimal id per line, to the file named by $TRUZZ_COV_FILE. The input is
// delivered as a file whose path replaces the `@@` argument.

#ifndef TRUZZ_TARGET_H_
#define TRUZZ_TARGET_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "truzz/coverage.h"

namespace truzz {

inline constexpr char kCoverageFileEnv[] = "TRUZZ_COV_FILE";
inline constexpr char kInputPlaceholder[] = "@@";

enum class CheckKind { kValidation, kNonValidation };
enum class PredicateKind { kEq, kLt, kInRange };

struct Predicate {
  PredicateKind kind = PredicateKind::kEq;
  std::vector<uint8_t> constant;  // kEq: one byte per position in the range
  unsigned threshold = 0;         // kLt: input[first] < threshold (0..256)
  uint8_t lo = 0;                 // kInRange: lo <= input[first] <= hi
  uint8_t hi = 0;

  bool Holds(std::span<const uint8_t> range) const;
};

struct Check {
  size_t first = 0;  // inclusive byte range
  size_t last = 0;
  Predicate predicate;
  CheckKind kind = CheckKind::kValidation;
};

struct Region {
  EdgeId base = 0;
  uint32_t edge_count = 0;
  bool terminal = false;
};

struct Stage {
  std::string id;
  std::optional<Check> check;
  Region pass;
  std::optional<Region> fail;
};

struct TargetSpec {
  size_t input_length = 0;
  std::vector<Stage> stages;

  // One past the largest edge id any region can emit.
  EdgeId EdgeBound() const;
};

// Parses the key/value document format. Throws ParseError naming the
// offending stage on malformed text, overlapping edge intervals, or byte
// ranges outside the input.
TargetSpec ParseTargetSpec(std::string_view text);
TargetSpec LoadTargetSpec(const std::filesystem::path& path);

// Serializes back to the document format; ParseTargetSpec(FormatTargetSpec(s))
// reproduces s.
std::string FormatTargetSpec(const TargetSpec& spec);

enum class ExecStatus { kNormal, kCrash, kTimeout };

const char* ExecStatusName(ExecStatus status);

struct ExecResult {
  Bitmap bitmap;
  std::optional<bool> valid;  // set by synthetic targets only
  ExecStatus status = ExecStatus::kNormal;

  explicit ExecResult(size_t map_size = kDefaultMapSize) : bitmap(map_size) {}
};

class Executor {
 public:
  virtual ~Executor() = default;

  // Overwrites `out` (whose bitmap must have map_size() counters).
  virtual void Run(std::span<const uint8_t> input, ExecResult& out) = 0;
  virtual size_t map_size() const = 0;
  virtual bool synthetic() const { return false; }

  ExecResult Run(std::span<const uint8_t> input) {
    ExecResult result(map_size());
    Run(input, result);
    return result;
  }
};

// Interprets a TargetSpec. Inputs are zero-padded or truncated to
// spec.input_length before evaluation. Pure and reentrant.
void ExecuteSynthetic(const TargetSpec& spec, std::span<const uint8_t> input,
                      ExecResult& out);
ExecResult ExecuteSynthetic(const TargetSpec& spec,
                            std::span<const uint8_t> input,
                            size_t map_size = kDefaultMapSize);

class SyntheticExecutor : public Executor {
 public:
  // Throws ConfigError if the spec emits edges >= map_size.
  explicit SyntheticExecutor(TargetSpec spec,
                             size_t map_size = kDefaultMapSize);

  using Executor::Run;
  void Run(std::span<const uint8_t> input, ExecResult& out) override {
    ExecuteSynthetic(spec_, input, out);
  }
  size_t map_size() const override { return map_size_; }
  bool synthetic() const override { return true; }
  const TargetSpec& spec() const { return spec_; }

 private:
  TargetSpec spec_;
  size_t map_size_;
};

// Runs `argv` once per input. Safe to call from several threads at once:
// every call uses its own input and coverage-dump files.
class ExternalExecutor : public Executor {
 public:
  // Throws PreconditionError unless argv contains exactly one `@@`.
  ExternalExecutor(std::vector<std::string> argv,
                   std::chrono::milliseconds timeout,
                   size_t map_size = kDefaultMapSize);

  using Executor::Run;
  // Throws ExecError on spawn failure or a missing/corrupt dump after a
  // normal exit. Crashes and timeouts are reported through out.status.
  void Run(std::span<const uint8_t> input, ExecResult& out) override;
  size_t map_size() const override { return map_size_; }

 private:
  std::vector<std::string> argv_;
  size_t placeholder_index_;
  std::chrono::milliseconds timeout_;
  size_t map_size_;
};

// Reads a coverage dump into `out`. Throws ExecError(kCoverageDumpCorrupt)
// on non-numeric lines or ids outside the map.
void ReadCoverageDump(const std::filesystem::path& path, Bitmap& out);

// Splits a command line on whitespace (no quoting rules).
std::vector<std::string> SplitCommandLine(std::string_view command);

}  // namespace truzz

#endif  // TRUZZ_TARGET_H_
