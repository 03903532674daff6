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

#include "truzz/byte_analysis.h"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "truzz/errors.h"

namespace truzz {

void AnalysisConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw ConfigError("fitness threshold must be in [0, 1), got " +
                      std::to_string(threshold));
  }
  if (min_interval < 1) throw ConfigError("minimum interval must be >= 1");
  if (!(lower_bound > 0.0 && lower_bound <= 1.0)) {
    throw ConfigError("probability lower bound must be in (0, 1], got " +
                      std::to_string(lower_bound));
  }
}

double Fitness(const Path& seed_path, const Path& probe_path) {
  if (seed_path.empty()) {
    throw PreconditionError("fitness is undefined for an empty seed path");
  }
  if (seed_path.size() <= probe_path.size()) return 0.0;
  const double shared = static_cast<double>(IntersectionSize(seed_path, probe_path));
  return 1.0 - (static_cast<double>(probe_path.size()) + shared) /
                   (2.0 * static_cast<double>(seed_path.size()));
}

std::vector<uint8_t> ProbeMutate(std::span<const uint8_t> seed, size_t begin,
                                 size_t end) {
  if (begin > end || end >= seed.size()) {
    throw PreconditionError("probe interval [" + std::to_string(begin) + ", " +
                            std::to_string(end) + "] outside seed of length " +
                            std::to_string(seed.size()));
  }
  std::vector<uint8_t> out(seed.begin(), seed.end());
  for (size_t i = begin; i <= end; ++i) out[i] ^= 0xFF;
  return out;
}

FitnessMap Analyze(std::span<const uint8_t> seed, const Path& seed_path,
                   Executor& executor, const AnalysisConfig& config) {
  config.Validate();
  if (seed.empty()) throw PreconditionError("cannot analyze an empty seed");
  if (seed_path.empty()) {
    throw PreconditionError("cannot analyze a seed with an empty path");
  }

  FitnessMap result;
  result.fitness.assign(seed.size(), 0.0);
  ExecResult exec(executor.map_size());

  auto probe = [&](size_t begin, size_t end) {
    const auto mutated = ProbeMutate(seed, begin, end);
    try {
      executor.Run(mutated, exec);
    } catch (const Error& e) {
      throw AnalysisError(begin, end, e.what());
    }
    ++result.probe_count;
    return Fitness(seed_path, PathFromBitmap(exec.bitmap));
  };

  if (seed.size() == 1) {
    result.fitness[0] = probe(0, 0);
    return result;
  }

  const size_t last = seed.size() - 1;
  std::deque<std::pair<size_t, size_t>> pending = {{0, last / 2},
                                                   {last / 2 + 1, last}};
  while (!pending.empty()) {
    const auto [begin, end] = pending.front();
    pending.pop_front();
    const double f = probe(begin, end);
    if (f < config.threshold || end - begin < config.min_interval) {
      std::fill(result.fitness.begin() + static_cast<std::ptrdiff_t>(begin),
                result.fitness.begin() + static_cast<std::ptrdiff_t>(end) + 1, f);
    } else {
      const size_t mid = (begin + end) / 2;
      pending.emplace_back(begin, mid);
      pending.emplace_back(mid + 1, end);
    }
  }
  return result;
}

MutationMask MaskFromFitness(const FitnessMap& fitness_map,
                             const AnalysisConfig& config) {
  MutationMask mask;
  mask.probability.reserve(fitness_map.fitness.size());
  for (double f : fitness_map.fitness) {
    mask.probability.push_back(std::max(1.0 - f, config.lower_bound));
  }
  return mask;
}

}  // namespace truzz
