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

// On-disk campaign layout:
//
//   seeds_in/             user-provided initial seeds
//   queue/id_NNNNNN       retained seeds, raw bytes
//   meta/id_NNNNNN.meta   rank, order, path and cached analysis per seed
//   crashes/              crashing / hanging inputs
//   stats.csv             periodic stats rows
//   overall.cov           globally covered edge ids, one per line
//   campaign.state        counters and rng state for --resume

#ifndef TRUZZ_CORPUS_STORE_H_
#define TRUZZ_CORPUS_STORE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "truzz/coverage.h"
#include "truzz/scheduler.h"
#include "truzz/stats.h"

namespace truzz {

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes);

class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path seeds_in() const { return root_ / "seeds_in"; }
  std::filesystem::path queue() const { return root_ / "queue"; }
  std::filesystem::path meta() const { return root_ / "meta"; }
  std::filesystem::path crashes() const { return root_ / "crashes"; }
  std::filesystem::path stats_csv() const { return root_ / "stats.csv"; }
  std::filesystem::path overall_cov() const { return root_ / "overall.cov"; }
  std::filesystem::path state_file() const { return root_ / "campaign.state"; }

  // Creates the output subdirectories. A fresh campaign refuses a directory
  // whose queue/ already holds seeds (throws CampaignError).
  void Prepare(bool resume) const;

  // Initial seeds from seeds_in/, sorted by file name.
  std::vector<std::vector<uint8_t>> LoadInitialSeeds() const;

  void WriteSeed(const SeedEntry& entry) const;
  void WriteMeta(const SeedEntry& entry) const;
  void WriteCrash(uint64_t index, const CrashRecord& crash) const;
  // Every entry of queue/ with its meta file.
  std::vector<SeedEntry> LoadSeeds() const;

  void WriteOverall(const Bitmap& overall) const;
  // Throws ConfigError on ids >= map_size.
  Bitmap ReadOverall(size_t map_size) const;

 private:
  std::filesystem::path root_;
};

std::string SeedFileName(SeedId id);

// Newline-separated decimal edge ids (overall.cov format) as a bitmap.
// Throws ConfigError on unreadable files or ids >= map_size.
Bitmap ReadEdgeList(const std::filesystem::path& path, size_t map_size);

// Serialized SeedEntry metadata (everything but the bytes).
std::string FormatSeedMeta(const SeedEntry& entry);
// Fills all metadata fields of `entry`; throws ConfigError on bad input.
void ParseSeedMeta(const std::string& text, SeedEntry& entry);

}  // namespace truzz

#endif  // TRUZZ_CORPUS_STORE_H_
