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

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>
#include <thread>

#include "truzz/errors.h"
#include "truzz/target.h"

extern char** environ;

namespace truzz {
namespace {

namespace fs = std::filesystem;

// Per-call scratch directory holding the input file and the coverage dump.
class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "truzz-exec-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw ExecError(ExecError::Kind::kSpawnFailure,
                      std::string("mkdtemp: ") + std::strerror(errno));
    }
    path_ = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class FileActions {
 public:
  FileActions() { posix_spawn_file_actions_init(&actions_); }
  ~FileActions() { posix_spawn_file_actions_destroy(&actions_); }
  FileActions(const FileActions&) = delete;
  FileActions& operator=(const FileActions&) = delete;
  posix_spawn_file_actions_t* get() { return &actions_; }

 private:
  posix_spawn_file_actions_t actions_;
};

void WriteInput(const fs::path& path, std::span<const uint8_t> input) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(input.data()),
            static_cast<std::streamsize>(input.size()));
  if (!out) {
    throw ExecError(ExecError::Kind::kSpawnFailure,
                    "cannot write input file " + path.string());
  }
}

}  // namespace

std::vector<std::string> SplitCommandLine(std::string_view command) {
  // Whitespace separates words; single or double quotes group them.
  std::vector<std::string> out;
  std::string word;
  bool in_word = false;
  char quote = 0;
  for (char c : command) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        word += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_word) out.push_back(std::move(word));
      word.clear();
      in_word = false;
    } else {
      word += c;
      in_word = true;
    }
  }
  if (quote) throw ConfigError("unterminated quote in command line");
  if (in_word) out.push_back(std::move(word));
  return out;
}

void ReadCoverageDump(const fs::path& path, Bitmap& out) {
  std::ifstream in(path);
  if (!in) {
    throw ExecError(ExecError::Kind::kCoverageDumpMissing,
                    "coverage dump not found: " + path.string());
  }
  out.Clear();
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    uint64_t id = 0;
    const auto [ptr, ec] = std::from_chars(b, e, id);
    if (ec != std::errc() || ptr != e) {
      throw ExecError(ExecError::Kind::kCoverageDumpCorrupt,
                      path.string() + ":" + std::to_string(line_no) +
                          ": not a decimal edge id");
    }
    if (id >= out.size()) {
      throw ExecError(ExecError::Kind::kCoverageDumpCorrupt,
                      path.string() + ":" + std::to_string(line_no) +
                          ": edge id " + std::to_string(id) +
                          " outside map of size " + std::to_string(out.size()));
    }
    out.Hit(static_cast<EdgeId>(id));
  }
}

ExternalExecutor::ExternalExecutor(std::vector<std::string> argv,
                                   std::chrono::milliseconds timeout,
                                   size_t map_size)
    : argv_(std::move(argv)), timeout_(timeout), map_size_(map_size) {
  const auto n = std::count(argv_.begin(), argv_.end(), kInputPlaceholder);
  if (n != 1) {
    throw PreconditionError("target command must contain exactly one '" +
                            std::string(kInputPlaceholder) + "' placeholder, found " +
                            std::to_string(n));
  }
  placeholder_index_ = static_cast<size_t>(
      std::find(argv_.begin(), argv_.end(), kInputPlaceholder) - argv_.begin());
  if (placeholder_index_ == 0) {
    throw PreconditionError("the program itself cannot be the input placeholder");
  }
}

void ExternalExecutor::Run(std::span<const uint8_t> input, ExecResult& out) {
  ScratchDir scratch;
  const fs::path input_path = scratch.path() / "input";
  const fs::path dump_path = scratch.path() / "coverage";
  WriteInput(input_path, input);

  std::vector<std::string> args = argv_;
  args[placeholder_index_] = input_path.string();
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  const std::string env_prefix = std::string(kCoverageFileEnv) + "=";
  std::string cov_env = env_prefix + dump_path.string();
  std::vector<char*> envp;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    if (std::strncmp(*e, env_prefix.c_str(), env_prefix.size()) != 0) {
      envp.push_back(*e);
    }
  }
  envp.push_back(cov_env.data());
  envp.push_back(nullptr);

  FileActions actions;
  posix_spawn_file_actions_addopen(actions.get(), STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(actions.get(), STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(actions.get(), STDERR_FILENO, "/dev/null", O_WRONLY, 0);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, argv[0], actions.get(), nullptr,
                                argv.data(), envp.data());
  if (rc != 0) {
    throw ExecError(ExecError::Kind::kSpawnFailure,
                    "cannot spawn '" + argv_[0] + "': " + std::strerror(rc));
  }

  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  auto backoff = std::chrono::microseconds(50);
  int wstatus = 0;
  bool timed_out = false;
  for (;;) {
    const pid_t r = ::waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) {
      throw ExecError(ExecError::Kind::kSpawnFailure,
                      std::string("waitpid: ") + std::strerror(errno));
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
      }
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, std::chrono::microseconds(2000));
  }

  out.valid.reset();
  if (timed_out) {
    out.status = ExecStatus::kTimeout;
  } else if (WIFSIGNALED(wstatus)) {
    out.status = ExecStatus::kCrash;
  } else {
    out.status = ExecStatus::kNormal;
  }

  if (out.status != ExecStatus::kNormal && !fs::exists(dump_path)) {
    out.bitmap.Clear();
    return;
  }
  ReadCoverageDump(dump_path, out.bitmap);
}

}  // namespace truzz
