// Copyright 2026 The Causal Summoning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "summoning/cli.hpp"

namespace summoning::testing {

/// One CLI invocation with its recorded exit code. Expected stdout and
/// stderr live next to the manifest as <name>.out and <name>.err.
struct GoldenCase {
  std::string name;
  std::string exit;  // "?" until recorded
  std::vector<std::string> args;
};

struct CliRun {
  int exit = 0;
  std::string out;
  std::string err;
};

inline std::string golden_path(const std::string& file) {
  return std::string(SUMMONING_GOLDEN_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

inline std::vector<GoldenCase> load_golden_cases() {
  std::vector<GoldenCase> cases;
  std::istringstream lines(slurp(golden_path("cases.txt")));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream words(line);
    GoldenCase c;
    words >> c.name >> c.exit;
    for (std::string w; words >> w;) c.args.push_back(w);
    cases.push_back(std::move(c));
  }
  return cases;
}

/// Runs the CLI in process. The fixture directory is shown as {fx} in the
/// captured text so goldens do not depend on the checkout location.
inline CliRun run_golden_case(const GoldenCase& c) {
  std::vector<std::string> args = c.args;
  for (auto& a : args) replace_all(a, "{fx}", SUMMONING_FIXTURE_DIR);
  std::ostringstream out, err;
  CliRun run;
  run.exit = run_cli(args, out, err);
  run.out = out.str();
  run.err = err.str();
  replace_all(run.out, SUMMONING_FIXTURE_DIR, "{fx}");
  replace_all(run.err, SUMMONING_FIXTURE_DIR, "{fx}");
  return run;
}

}  // namespace summoning::testing
