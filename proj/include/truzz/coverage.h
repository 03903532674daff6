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

// Edge-coverage bookkeeping: hit-count bitmaps, the edge sets (paths) derived
// from them, and the new-edge / merge operations the fuzzing loop runs after
// every execution.
//
// Only covered vs. uncovered matters to the scheduler and byte analysis, so
// counters saturate instead of wrapping and no hit-count bucketing is done.

#ifndef TRUZZ_COVERAGE_H_
#define TRUZZ_COVERAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace truzz {

inline constexpr size_t kDefaultMapSize = 65536;

using EdgeId = uint32_t;

class Bitmap {
 public:
  explicit Bitmap(size_t size = kDefaultMapSize);

  // Bitmap of `size` counters with every edge in `edges` hit once.
  // Throws ConfigError if an edge is >= size.
  static Bitmap FromEdges(size_t size, std::span<const EdgeId> edges);

  size_t size() const { return counters_.size(); }
  uint8_t operator[](size_t i) const { return counters_[i]; }
  bool Covered(size_t i) const { return counters_[i] != 0; }
  std::span<const uint8_t> counters() const { return counters_; }

  // Saturating increment. `edge` must be < size().
  void Hit(EdgeId edge) {
    uint8_t& c = counters_[edge];
    if (c != UINT8_MAX) ++c;
  }
  void Set(size_t i, uint8_t value) { counters_[i] = value; }
  void Clear();

  size_t CoveredCount() const;

  friend bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::vector<uint8_t> counters_;
};

// Sorted, duplicate-free set of edge ids.
class Path {
 public:
  Path() = default;
  // Sorts and deduplicates.
  explicit Path(std::vector<EdgeId> edges);

  size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool Contains(EdgeId edge) const;
  const std::vector<EdgeId>& edges() const { return edges_; }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<EdgeId> edges_;
};

// |a ∩ b|, linear merge over the sorted edge lists.
size_t IntersectionSize(const Path& a, const Path& b);

Path PathFromBitmap(const Bitmap& bitmap);

// Number of edges covered by `bitmap` that `overall` has not covered yet.
// Throws ConfigError on a size mismatch.
size_t CountNewEdges(const Bitmap& bitmap, const Bitmap& overall);

// overall |= bitmap in coverage terms (counters add, saturating).
// Throws ConfigError on a size mismatch.
void MergeInto(Bitmap& overall, const Bitmap& bitmap);

}  // namespace truzz

#endif  // TRUZZ_COVERAGE_H_
