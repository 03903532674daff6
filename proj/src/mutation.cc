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

#include "truzz/mutation.h"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "truzz/errors.h"

namespace truzz {

std::string Rng::SaveState() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

void Rng::LoadState(const std::string& state) {
  std::istringstream in(state);
  in >> engine_;
  if (!in) throw ConfigError("corrupt rng state");
}

MutationOp RandomOp(Rng& rng) {
  MutationOp op;
  op.kind = static_cast<MutationKind>(rng.Below(4));
  switch (op.kind) {
    case MutationKind::kBitFlip:
      op.arg = static_cast<int>(rng.Below(8));
      break;
    case MutationKind::kByteRandom:
      op.arg = static_cast<int>(rng.Below(256));
      break;
    case MutationKind::kByteArith: {
      const int magnitude = rng.Between(1, kMaxArith);
      op.arg = rng.Below(2) ? magnitude : -magnitude;
      break;
    }
    case MutationKind::kInterestingByte:
      op.arg = kInterestingBytes[rng.Below(std::size(kInterestingBytes))];
      break;
  }
  return op;
}

void ApplyOp(std::span<uint8_t> bytes, size_t index, const MutationOp& op) {
  uint8_t& b = bytes[index];
  switch (op.kind) {
    case MutationKind::kBitFlip:
      b ^= static_cast<uint8_t>(1u << op.arg);
      break;
    case MutationKind::kByteRandom:
    case MutationKind::kInterestingByte:
      b = static_cast<uint8_t>(op.arg);
      break;
    case MutationKind::kByteArith:
      b = static_cast<uint8_t>(b + op.arg);
      break;
  }
}

size_t SelectByte(const MutationMask& mask, Rng& rng) {
  const auto& p = mask.probability;
  if (p.empty()) throw PreconditionError("cannot select from an empty mask");
  const size_t cap = 16 * p.size();
  for (size_t attempt = 0; attempt < cap; ++attempt) {
    const size_t i = rng.Below(p.size());
    if (p[i] >= 1.0 || rng.Uniform01() < p[i]) return i;
  }
  return static_cast<size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

size_t DrawStackDepth(Rng& rng) {
  return size_t{1} << rng.Between(0, kMaxStackPower);
}

std::vector<uint8_t> Mutate(std::span<const uint8_t> seed,
                            const MutationMask& mask, Rng& rng, size_t ops) {
  if (ops < 1) throw PreconditionError("ops_per_input must be >= 1");
  if (mask.probability.size() != seed.size()) {
    throw PreconditionError("mask length " +
                            std::to_string(mask.probability.size()) +
                            " differs from seed length " +
                            std::to_string(seed.size()));
  }
  std::vector<uint8_t> out(seed.begin(), seed.end());
  if (out.empty()) return out;
  for (size_t k = 0; k < ops; ++k) {
    const size_t index = SelectByte(mask, rng);
    ApplyOp(out, index, RandomOp(rng));
  }
  return out;
}

}  // namespace truzz
