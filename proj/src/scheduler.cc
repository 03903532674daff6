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

#include "truzz/scheduler.h"

#include <algorithm>
#include <utility>

#include "truzz/errors.h"

namespace truzz {

const char* PolicyName(Policy policy) {
  return policy == Policy::kTruzz ? "truzz" : "fifo";
}

Policy ParsePolicy(const std::string& name) {
  if (name == "truzz") return Policy::kTruzz;
  if (name == "fifo") return Policy::kFifo;
  throw ConfigError("unknown policy '" + name + "' (expected truzz or fifo)");
}

void SchedulerConfig::Validate() const {
  if (energy < 1) throw ConfigError("energy must be >= 1");
}

bool Corpus::RankedBefore(size_t a, size_t b) const {
  const SeedEntry& x = entries_[a];
  const SeedEntry& y = entries_[b];
  if (x.rank_key != y.rank_key) return x.rank_key > y.rank_key;
  return x.insertion_order < y.insertion_order;
}

void Corpus::InsertRanked(size_t index) {
  const auto pos = std::upper_bound(
      ranked_.begin(), ranked_.end(), index,
      [this](size_t a, size_t b) { return RankedBefore(a, b); });
  ranked_.insert(pos, index);
}

SeedEntry& Corpus::Add(std::vector<uint8_t> bytes, Path path,
                       uint64_t rank_key) {
  SeedEntry entry;
  entry.id = next_id_;
  entry.insertion_order = next_insertion_;
  entry.bytes = std::move(bytes);
  entry.path = std::move(path);
  entry.rank_key = rank_key;
  return Restore(std::move(entry));
}

SeedEntry& Corpus::Restore(SeedEntry entry) {
  if (Find(entry.id) != nullptr) {
    throw PreconditionError("duplicate seed id " + std::to_string(entry.id));
  }
  next_id_ = std::max(next_id_, entry.id + 1);
  next_insertion_ = std::max(next_insertion_, entry.insertion_order + 1);
  // Keep entries_ in insertion order even if restored out of order.
  auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), entry.insertion_order,
      [](uint64_t order, const SeedEntry& e) { return order < e.insertion_order; });
  const size_t index = static_cast<size_t>(pos - entries_.begin());
  if (pos != entries_.end()) {
    // Mid-deque insertion shifts indices; only happens while restoring.
    entries_.insert(pos, std::move(entry));
    ranked_.clear();
    index_of_.clear();
    for (size_t i = 0; i < entries_.size(); ++i) {
      index_of_[entries_[i].id] = i;
      InsertRanked(i);
    }
    return entries_[index];
  }
  index_of_[entry.id] = index;
  entries_.push_back(std::move(entry));
  InsertRanked(index);
  return entries_.back();
}

SeedEntry& Corpus::NextRoundRobin(size_t& cursor) {
  if (cursor >= entries_.size()) cursor = 0;
  return entries_[cursor++];
}

SeedEntry& Corpus::Select() {
  if (entries_.empty()) throw PreconditionError("select from an empty corpus");
  SeedEntry* chosen = nullptr;
  if (policy_ == Policy::kFifo) {
    chosen = &NextRoundRobin(fifo_cursor_);
  } else if (entries_[ranked_.front()].rank_key > 0) {
    chosen = &entries_[ranked_.front()];
  } else {
    // Front has rank 0, so every seed does.
    chosen = &NextRoundRobin(zero_rank_cursor_);
  }
  ++chosen->times_selected;
  return *chosen;
}

size_t Corpus::IndexOf(SeedId id) const {
  const auto it = index_of_.find(id);
  return it == index_of_.end() ? entries_.size() : it->second;
}

SeedEntry* Corpus::Find(SeedId id) {
  const size_t i = IndexOf(id);
  return i < entries_.size() ? &entries_[i] : nullptr;
}

const SeedEntry* Corpus::Find(SeedId id) const {
  const size_t i = IndexOf(id);
  return i < entries_.size() ? &entries_[i] : nullptr;
}

void Corpus::UpdateRank(SeedId id, uint64_t n_all) {
  const size_t index = IndexOf(id);
  if (index == entries_.size()) {
    throw PreconditionError("seed " + std::to_string(id) + " not in corpus");
  }
  ranked_.erase(std::find(ranked_.begin(), ranked_.end(), index));
  entries_[index].rank_key = n_all;
  InsertRanked(index);
}

std::vector<SeedId> Corpus::RankedIds() const {
  std::vector<SeedId> ids;
  ids.reserve(ranked_.size());
  for (size_t i : ranked_) ids.push_back(entries_[i].id);
  return ids;
}

bool Corpus::IsSorted() const {
  return std::is_sorted(ranked_.begin(), ranked_.end(),
                        [this](size_t a, size_t b) { return RankedBefore(a, b); });
}

size_t DryRun(std::span<const std::vector<uint8_t>> initial_seeds,
              Executor& executor, Corpus& corpus, Bitmap& overall) {
  if (initial_seeds.empty()) {
    throw CampaignError("dry run needs at least one initial seed");
  }
  size_t executions = 0;
  ExecResult exec(executor.map_size());
  for (const auto& seed : initial_seeds) {
    executor.Run(seed, exec);
    ++executions;
    RetainIfNew(seed, exec, overall, corpus);
  }
  if (corpus.empty()) {
    throw CampaignError("no initial seed covers any edge; corpus is empty");
  }
  return executions;
}

RetainOutcome RetainIfNew(std::span<const uint8_t> input,
                          const ExecResult& result, Bitmap& overall,
                          Corpus& corpus) {
  RetainOutcome outcome;
  outcome.new_edges = CountNewEdges(result.bitmap, overall);
  if (result.status != ExecStatus::kNormal) {
    corpus.AddCrash({std::vector<uint8_t>(input.begin(), input.end()),
                     result.status});
    outcome.crash_stored = true;
  } else if (outcome.new_edges > 0) {
    outcome.retained = corpus
                           .Add(std::vector<uint8_t>(input.begin(), input.end()),
                                PathFromBitmap(result.bitmap), outcome.new_edges)
                           .id;
  }
  MergeInto(overall, result.bitmap);
  return outcome;
}

}  // namespace truzz
