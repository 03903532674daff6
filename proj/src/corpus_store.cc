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

#include "truzz/corpus_store.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "truzz/errors.h"

namespace truzz {
namespace {

namespace fs = std::filesystem;

template <typename T>
std::string JoinNumbers(const std::vector<T>& values) {
  std::string out;
  char buf[64];
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), values[i]);
    out.append(buf, p);
  }
  return out;
}

template <typename T>
std::vector<T> SplitNumbers(const std::string& text, const std::string& key) {
  std::vector<T> out;
  if (text.empty()) return out;
  size_t pos = 0;
  for (;;) {
    const size_t comma = text.find(',', pos);
    const size_t end = comma == std::string::npos ? text.size() : comma;
    T value{};
    const auto [p, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || p != text.data() + end) {
      throw ConfigError("bad number list for '" + key + "' in seed metadata");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw CampaignError("cannot write " + path.string());
}

bool IsSeedFileName(const std::string& name) {
  return name.size() == 9 && name.rfind("id_", 0) == 0 &&
         std::all_of(name.begin() + 3, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<uint8_t> ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void WriteFileBytes(const fs::path& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CampaignError("cannot write " + path.string());
}

std::string SeedFileName(SeedId id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "id_%06llu", static_cast<unsigned long long>(id));
  return buf;
}

void CorpusStore::Prepare(bool resume) const {
  std::error_code ec;
  for (const auto& dir : {root_, queue(), meta(), crashes()}) {
    fs::create_directories(dir, ec);
    if (ec) throw CampaignError("cannot create " + dir.string() + ": " + ec.message());
  }
  if (!resume && !fs::is_empty(queue())) {
    throw CampaignError(queue().string() +
                        " already holds a campaign; resume it or use a fresh "
                        "corpus directory");
  }
}

std::vector<std::vector<uint8_t>> CorpusStore::LoadInitialSeeds() const {
  if (!fs::is_directory(seeds_in())) {
    throw CampaignError("missing initial seed directory " + seeds_in().string());
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(seeds_in())) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::vector<uint8_t>> seeds;
  for (const auto& f : files) seeds.push_back(ReadFileBytes(f));
  if (seeds.empty()) throw CampaignError(seeds_in().string() + " holds no seeds");
  return seeds;
}

std::string FormatSeedMeta(const SeedEntry& entry) {
  std::ostringstream out;
  out << "id = " << entry.id << "\n"
      << "rank_key = " << entry.rank_key << "\n"
      << "insertion_order = " << entry.insertion_order << "\n"
      << "times_selected = " << entry.times_selected << "\n"
      << "path_size = " << entry.path.size() << "\n"
      << "path = " << JoinNumbers(entry.path.edges()) << "\n";
  if (entry.analysis) {
    out << "probe_count = " << entry.analysis->fitness.probe_count << "\n"
        << "fitness = " << JoinNumbers(entry.analysis->fitness.fitness) << "\n"
        << "probability = " << JoinNumbers(entry.analysis->mask.probability) << "\n";
  }
  return out.str();
}

void ParseSeedMeta(const std::string& text, SeedEntry& entry) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    const auto bare = line.find(" =");
    if (eq == std::string::npos && bare != line.size() - 2) {
      throw ConfigError("bad seed metadata line '" + line + "'");
    }
    if (eq == std::string::npos) {
      kv[line.substr(0, bare)] = "";
    } else {
      kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
  }
  auto number = [&](const std::string& key) -> uint64_t {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("seed metadata lacks '" + key + "'");
    const auto v = SplitNumbers<uint64_t>(it->second, key);
    if (v.size() != 1) throw ConfigError("bad value for '" + key + "'");
    return v[0];
  };
  entry.id = number("id");
  entry.rank_key = number("rank_key");
  entry.insertion_order = number("insertion_order");
  entry.times_selected = number("times_selected");
  const auto path_it = kv.find("path");
  if (path_it == kv.end()) throw ConfigError("seed metadata lacks 'path'");
  entry.path = Path(SplitNumbers<EdgeId>(path_it->second, "path"));
  if (entry.path.size() != number("path_size")) {
    throw ConfigError("path_size disagrees with path in seed metadata");
  }
  entry.analysis.reset();
  if (kv.count("fitness")) {
    SeedAnalysis analysis;
    analysis.fitness.probe_count = number("probe_count");
    analysis.fitness.fitness = SplitNumbers<double>(kv["fitness"], "fitness");
    analysis.mask.probability = SplitNumbers<double>(kv["probability"], "probability");
    if (analysis.fitness.fitness.size() != analysis.mask.probability.size()) {
      throw ConfigError("fitness and probability lengths differ in seed metadata");
    }
    entry.analysis = std::move(analysis);
  }
}

void CorpusStore::WriteSeed(const SeedEntry& entry) const {
  WriteFileBytes(queue() / SeedFileName(entry.id), entry.bytes);
  WriteMeta(entry);
}

void CorpusStore::WriteMeta(const SeedEntry& entry) const {
  WriteText(meta() / (SeedFileName(entry.id) + ".meta"), FormatSeedMeta(entry));
}

void CorpusStore::WriteCrash(uint64_t index, const CrashRecord& crash) const {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s_%06llu",
                crash.status == ExecStatus::kTimeout ? "timeout" : "crash",
                static_cast<unsigned long long>(index));
  WriteFileBytes(crashes() / buf, crash.bytes);
}

std::vector<SeedEntry> CorpusStore::LoadSeeds() const {
  std::vector<SeedEntry> seeds;
  if (!fs::is_directory(queue())) return seeds;
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(queue())) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && IsSeedFileName(name)) names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    SeedEntry entry;
    entry.bytes = ReadFileBytes(queue() / name);
    ParseSeedMeta(ReadText(meta() / (name + ".meta")), entry);
    seeds.push_back(std::move(entry));
  }
  return seeds;
}

void CorpusStore::WriteOverall(const Bitmap& overall) const {
  std::string text;
  const auto path = PathFromBitmap(overall);
  for (EdgeId e : path.edges()) {
    text += std::to_string(e);
    text += '\n';
  }
  WriteText(overall_cov(), text);
}

Bitmap CorpusStore::ReadOverall(size_t map_size) const {
  return ReadEdgeList(overall_cov(), map_size);
}

Bitmap ReadEdgeList(const fs::path& path, size_t map_size) {
  const std::string text = ReadText(path);
  std::vector<EdgeId> edges;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = SplitNumbers<uint64_t>(line, path.filename().string());
    if (v.size() != 1 || v[0] >= map_size) {
      throw ConfigError("bad edge id '" + line + "' in " + path.string());
    }
    edges.push_back(static_cast<EdgeId>(v[0]));
  }
  return Bitmap::FromEdges(map_size, edges);
}

}  // namespace truzz
