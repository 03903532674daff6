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

#include "truzz/coverage.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "truzz/errors.h"

namespace truzz {
namespace {

void CheckSameSize(const Bitmap& a, const Bitmap& b) {
  if (a.size() != b.size()) {
    throw ConfigError("bitmap size mismatch: " + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()));
  }
}

// Bitmaps are mostly zero; skipping whole zero words keeps the per-execution
// scans cheap at the default 64K map size.
uint64_t LoadWord(const uint8_t* p) {
  uint64_t w;
  std::memcpy(&w, p, sizeof(w));
  return w;
}

}  // namespace

Bitmap::Bitmap(size_t size) : counters_(size, 0) {}

Bitmap Bitmap::FromEdges(size_t size, std::span<const EdgeId> edges) {
  Bitmap bitmap(size);
  for (EdgeId e : edges) {
    if (e >= size) {
      throw ConfigError("edge id " + std::to_string(e) +
                        " outside map of size " + std::to_string(size));
    }
    bitmap.Hit(e);
  }
  return bitmap;
}

void Bitmap::Clear() { std::fill(counters_.begin(), counters_.end(), 0); }

size_t Bitmap::CoveredCount() const {
  return static_cast<size_t>(
      std::count_if(counters_.begin(), counters_.end(),
                    [](uint8_t c) { return c != 0; }));
}

Path::Path(std::vector<EdgeId> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Path::Contains(EdgeId edge) const {
  return std::binary_search(edges_.begin(), edges_.end(), edge);
}

size_t IntersectionSize(const Path& a, const Path& b) {
  size_t n = 0;
  auto i = a.edges().begin();
  auto j = b.edges().begin();
  while (i != a.edges().end() && j != b.edges().end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

Path PathFromBitmap(const Bitmap& bitmap) {
  std::vector<EdgeId> edges;
  const auto counters = bitmap.counters();
  for (size_t i = 0; i < counters.size(); ++i) {
    if (counters[i] != 0) edges.push_back(static_cast<EdgeId>(i));
  }
  return Path(std::move(edges));
}

size_t CountNewEdges(const Bitmap& bitmap, const Bitmap& overall) {
  CheckSameSize(bitmap, overall);
  const uint8_t* b = bitmap.counters().data();
  const uint8_t* o = overall.counters().data();
  const size_t size = bitmap.size();
  size_t n = 0;
  size_t i = 0;
  for (; i + sizeof(uint64_t) <= size; i += sizeof(uint64_t)) {
    if (LoadWord(b + i) == 0) continue;
    for (size_t k = i; k < i + sizeof(uint64_t); ++k) {
      n += (b[k] != 0 && o[k] == 0);
    }
  }
  for (; i < size; ++i) n += (b[i] != 0 && o[i] == 0);
  return n;
}

void MergeInto(Bitmap& overall, const Bitmap& bitmap) {
  CheckSameSize(overall, bitmap);
  const uint8_t* b = bitmap.counters().data();
  const size_t size = bitmap.size();
  size_t i = 0;
  auto merge_one = [&](size_t k) {
    if (b[k] == 0) return;
    const unsigned sum = unsigned{overall[k]} + unsigned{b[k]};
    overall.Set(k, static_cast<uint8_t>(std::min<unsigned>(sum, UINT8_MAX)));
  };
  for (; i + sizeof(uint64_t) <= size; i += sizeof(uint64_t)) {
    if (LoadWord(b + i) == 0) continue;
    for (size_t k = i; k < i + sizeof(uint64_t); ++k) merge_one(k);
  }
  for (; i < size; ++i) merge_one(i);
}

}  // namespace truzz
