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


#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "golden.hpp"

using namespace summoning;
using namespace summoning::testing;

namespace {

// SUMMONING_UPDATE_GOLDEN=1 rewrites the expected files and the recorded
// exit codes instead of comparing. Review the diff before committing.
bool updating() { return std::getenv("SUMMONING_UPDATE_GOLDEN") != nullptr; }

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("cli output matches the goldens") {
  auto cases = load_golden_cases();
  REQUIRE(cases.size() > 70);

  if (updating()) {
    std::string manifest = "# name expected-exit args... ; {fx} expands to the fixture directory\n";
    for (auto& c : cases) {
      const auto run = run_golden_case(c);
      write(golden_path(c.name + ".out"), run.out);
      write(golden_path(c.name + ".err"), run.err);
      manifest += c.name + " " + std::to_string(run.exit);
      for (const auto& a : c.args) manifest += " " + a;
      manifest += "\n";
    }
    write(golden_path("cases.txt"), manifest);
    return;
  }

  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto run = run_golden_case(c);
    CHECK(std::to_string(run.exit) == c.exit);
    CHECK(run.out == slurp(golden_path(c.name + ".out")));
    CHECK(run.err == slurp(golden_path(c.name + ".err")));
  }
}

TEST_CASE("exit codes by contract") {
  auto code = [](std::vector<std::string> args) {
    for (auto& a : args) replace_all(a, "{fx}", SUMMONING_FIXTURE_DIR);
    std::ostringstream out, err;
    return run_cli(args, out, err);
  };
  CHECK(code({"--mode", "single", "check", "{fx}/cyclic-triangle.json"}) == kExitOk);
  CHECK(code({"--mode", "multi", "check", "{fx}/cyclic-triangle.json"}) == kExitNegative);
  CHECK(code({"check", "{fx}/malformed.json"}) == kExitUsage);
  CHECK(code({"oracle", "{fx}/big-task.json"}) == kExitUsage);
  CHECK(code({"render", "{fx}/chain.json", "--format", "png"}) == kExitUsage);
  CHECK(code({"--help"}) == kExitOk);
}
