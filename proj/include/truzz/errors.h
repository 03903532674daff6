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

// Exception types shared by all truzz modules. Every error raised by the
// library derives from truzz::Error so callers can catch one base type.

#ifndef TRUZZ_ERRORS_H_
#define TRUZZ_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace truzz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration: mismatched map sizes, out-of-range parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Target spec document rejected by the parser. `stage()` is empty for
// top-level problems.
class ParseError : public Error {
 public:
  enum class Kind { kMalformed, kOverlappingEdges, kByteRangeOutOfBounds };

  ParseError(Kind kind, std::string stage, const std::string& message)
      : Error(stage.empty() ? message
                            : "stage '" + stage + "': " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  Kind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

 private:
  Kind kind_;
  std::string stage_;
};

// Failure while running an external target.
class ExecError : public Error {
 public:
  enum class Kind { kSpawnFailure, kCoverageDumpMissing, kCoverageDumpCorrupt };

  ExecError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// An executor failed in the middle of byte analysis; carries the inclusive
// byte interval that was being probed.
class AnalysisError : public Error {
 public:
  AnalysisError(size_t begin, size_t end, const std::string& cause)
      : Error("byte analysis failed probing [" + std::to_string(begin) + ", " +
              std::to_string(end) + "]: " + cause),
        begin_(begin),
        end_(end) {}

  size_t begin() const { return begin_; }
  size_t end() const { return end_; }

 private:
  size_t begin_;
  size_t end_;
};

// Campaign-level failures: empty corpus after the dry run, unusable corpus
// directory, too many executor failures.
class CampaignError : public Error {
 public:
  using Error::Error;
};

}  // namespace truzz

#endif  // TRUZZ_ERRORS_H_
