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

// Byte analysis: find the input bytes that guard validation checks.
//
// Mutating a validation-related byte sends execution into error handling,
// which shows up as a path much shorter than the seed's. For a probed byte
// interval the fitness
//
//   f = 1 - (|P'| + |P ∩ P'|) / (2 |P|)   if |P| > |P'|,  else 0
//
// scores how strongly the probe shortened and diverted the seed path P into
// the probe path P'. Intervals are refined by halving while their fitness
// stays at or above the threshold, so a seed of N bytes with one sensitive
// byte costs about 2 log2(N) probes. Fitness is then turned into a per-byte
// mutation probability max(1 - f, floor).

#ifndef TRUZZ_BYTE_ANALYSIS_H_
#define TRUZZ_BYTE_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "truzz/coverage.h"
#include "truzz/target.h"

namespace truzz {

struct AnalysisConfig {
  double threshold = 0.5;     // fitness at which an interval is refined further
  size_t min_interval = 1;    // stop refining once end - begin < min_interval
  double lower_bound = 0.05;  // mutation probability floor

  // Throws ConfigError unless 0 <= threshold < 1, min_interval >= 1 and
  // 0 < lower_bound <= 1.
  void Validate() const;
};

struct FitnessMap {
  std::vector<double> fitness;  // one entry per seed byte, each in [0, 1]
  size_t probe_count = 0;       // executor calls spent
};

struct MutationMask {
  std::vector<double> probability;  // one entry per seed byte

  // Mask that never rejects a byte.
  static MutationMask Uniform(size_t length) {
    return MutationMask{std::vector<double>(length, 1.0)};
  }
};

// In [0, 1); exactly 1 when the probe covers no edges at all. Throws
// PreconditionError if seed_path is empty.
double Fitness(const Path& seed_path, const Path& probe_path);

// Copy of `seed` with bytes [begin, end] (inclusive) XOR-ed with 0xFF.
// Throws PreconditionError unless begin <= end < seed.size().
std::vector<uint8_t> ProbeMutate(std::span<const uint8_t> seed, size_t begin,
                                 size_t end);

// Dichotomy over the seed's bytes. `executor` must be deterministic for the
// duration of the call. Executor errors are rethrown as AnalysisError
// carrying the interval being probed.
FitnessMap Analyze(std::span<const uint8_t> seed, const Path& seed_path,
                   Executor& executor, const AnalysisConfig& config);

MutationMask MaskFromFitness(const FitnessMap& fitness_map,
                             const AnalysisConfig& config);

}  // namespace truzz

#endif  // TRUZZ_BYTE_ANALYSIS_H_
