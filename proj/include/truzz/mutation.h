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

// Havoc-style, length-preserving mutation with mask-gated byte selection.
//
// A candidate position is drawn uniformly and then accepted with the mask's
// probability for that byte, so bytes flagged as validation-related are
// rarely touched. With an all-ones mask no acceptance draw is consumed and
// the random stream is exactly that of plain uniform selection.

#ifndef TRUZZ_MUTATION_H_
#define TRUZZ_MUTATION_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "truzz/byte_analysis.h"

namespace truzz {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be > 0.
  size_t Below(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(engine_);
  }
  // Uniform in [lo, hi].
  int Between(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double Uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  // Textual engine state, for resuming campaigns.
  std::string SaveState() const;
  void LoadState(const std::string& state);

 private:
  std::mt19937_64 engine_;
};

enum class MutationKind { kBitFlip, kByteRandom, kByteArith, kInterestingByte };

inline constexpr uint8_t kInterestingBytes[] = {0x00, 0xFF, 0x7F, 0x80, 0x01};
inline constexpr int kMaxArith = 35;
inline constexpr int kMaxStackPower = 6;

struct MutationOp {
  MutationKind kind = MutationKind::kBitFlip;
  // kBitFlip: bit 0..7; kByteRandom: replacement byte; kByteArith: signed
  // delta in ±[1, 35]; kInterestingByte: replacement byte.
  int arg = 0;
};

MutationOp RandomOp(Rng& rng);
void ApplyOp(std::span<uint8_t> bytes, size_t index, const MutationOp& op);

// Rejection sampling over `mask`. After 16 * size rejections falls back to
// the first index of maximal probability. mask must be non-empty.
size_t SelectByte(const MutationMask& mask, Rng& rng);

// Number of stacked operations per generated input: 2^k, k uniform in [0, 6].
size_t DrawStackDepth(Rng& rng);

// Applies `ops` random operations at mask-gated positions.
std::vector<uint8_t> Mutate(std::span<const uint8_t> seed,
                            const MutationMask& mask, Rng& rng, size_t ops);

}  // namespace truzz

#endif  // TRUZZ_MUTATION_H_
