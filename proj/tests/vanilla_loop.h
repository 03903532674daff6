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

// A plain coverage-guided loop with no byte analysis, no masks and no
// ranking: cyclic seed order, uniform byte choice, retention on new edges.
// It draws from the random stream in the same order as the library's
// mutation code so that the two can be compared run for run.

#ifndef TRUZZ_TESTS_VANILLA_LOOP_H_
#define TRUZZ_TESTS_VANILLA_LOOP_H_

#include <cstdint>
#include <set>
#include <vector>

#include "truzz/mutation.h"
#include "truzz/target.h"

namespace truzz::testing {

struct VanillaResult {
  std::vector<uint64_t> retained;          // ids in retention order
  std::vector<uint64_t> edges_at_rows;     // coverage every `interval` executions
  uint64_t final_edges = 0;
};

inline VanillaResult RunVanilla(const TargetSpec& spec,
                                const std::vector<std::vector<uint8_t>>& initial,
                                uint64_t rng_seed, uint64_t budget, size_t energy,
                                uint64_t interval) {
  VanillaResult out;
  std::set<uint32_t> covered;
  std::vector<std::vector<uint8_t>> queue;
  uint64_t executions = 0;
  auto execute = [&](const std::vector<uint8_t>& input) {
    const ExecResult r = ExecuteSynthetic(spec, input, kDefaultMapSize);
    ++executions;
    bool fresh = false;
    for (size_t i = 0; i < r.bitmap.size(); ++i) {
      if (r.bitmap.Covered(i) && covered.insert(static_cast<uint32_t>(i)).second) fresh = true;
    }
    if (fresh) {
      out.retained.push_back(queue.size());
      queue.push_back(input);
    }
    if (executions % interval == 0) out.edges_at_rows.push_back(covered.size());
  };
  for (const auto& seed : initial) {
    if (executions == budget) break;
    execute(seed);
  }
  Rng rng(rng_seed);
  for (size_t cursor = 0; executions < budget; cursor = (cursor + 1) % queue.size()) {
    const std::vector<uint8_t> seed = queue[cursor];
    for (size_t i = 0; i < energy && executions < budget; ++i) {
      const size_t depth = size_t{1} << rng.Between(0, 6);
      std::vector<uint8_t> child = seed;
      for (size_t k = 0; k < depth; ++k) {
        const size_t at = rng.Below(child.size());
        uint8_t& b = child[at];
        switch (rng.Below(4)) {
          case 0:
            b ^= static_cast<uint8_t>(1u << rng.Below(8));
            break;
          case 1:
            b = static_cast<uint8_t>(rng.Below(256));
            break;
          case 2: {
            const int m = rng.Between(1, 35);
            b = static_cast<uint8_t>(b + (rng.Below(2) ? m : -m));
            break;
          }
          case 3: {
            static constexpr uint8_t kValues[] = {0x00, 0xFF, 0x7F, 0x80, 0x01};
            b = kValues[rng.Below(5)];
            break;
          }
        }
      }
      execute(child);
    }
  }
  out.final_edges = covered.size();
  return out;
}

}  // namespace truzz::testing

#endif  // TRUZZ_TESTS_VANILLA_LOOP_H_
