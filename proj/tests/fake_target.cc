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

// Stand-in external target for executor tests.
//
//   fake_target MODE INPUT_FILE
//
// ok:      dump edges 3, 7 and 100 + first input byte (if any)
// crash:   dump edge 3, then die by SIGSEGV
// hang:    sleep for a minute
// nodump:  exit 0 without writing coverage
// corrupt: dump a non-numeric line
// bigid:   dump an id beyond any map

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <unistd.h>

int main(int argc, char** argv) {
  if (argc != 3) return 2;
  const char* mode = argv[1];
  const char* cov = std::getenv("TRUZZ_COV_FILE");
  if (cov == nullptr) return 3;
  int first = -1;
  if (FILE* in = std::fopen(argv[2], "rb")) {
    first = std::fgetc(in);
    std::fclose(in);
  } else {
    return 4;
  }
  auto dump = [cov](const char* text) {
    FILE* out = std::fopen(cov, "w");
    std::fputs(text, out);
    std::fclose(out);
  };
  if (!std::strcmp(mode, "ok")) {
    char buf[64];
    if (first >= 0) {
      std::snprintf(buf, sizeof(buf), "3\n7\n%d\n", 100 + first);
    } else {
      std::snprintf(buf, sizeof(buf), "3\n7\n");
    }
    dump(buf);
    return 0;
  }
  if (!std::strcmp(mode, "crash")) {
    dump("3\n");
    std::raise(SIGSEGV);
    return 0;
  }
  if (!std::strcmp(mode, "hang")) {
    sleep(60);
    return 0;
  }
  if (!std::strcmp(mode, "nodump")) return 0;
  if (!std::strcmp(mode, "corrupt")) {
    dump("3\nseven\n");
    return 0;
  }
  if (!std::strcmp(mode, "bigid")) {
    dump("3\n99999999\n");
    return 0;
  }
  return 5;
}
