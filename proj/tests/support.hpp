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

#include <cmath>
#include <random>
#include <string>

#include "summoning/task.hpp"

namespace summoning::testing {

inline SummoningTask fixture(const std::string& name) {
  return load_task_file(std::string(SUMMONING_FIXTURE_DIR) + "/" + name + ".json");
}

inline std::string fixture_path(const std::string& name) {
  return std::string(SUMMONING_FIXTURE_DIR) + "/" + name + ".json";
}

/// c_i = (i, [0]), r_i = (i + 0.5, [0]), s = (0, [0]).
inline SummoningTask make_chain(std::size_t n) {
  SummoningTask task;
  task.dim = 1;
  task.mode = TaskMode::UnrestrictedCalls;
  task.start = {0.0, {0.0}};
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i);
    task.pairs.push_back({{t, {0.0}}, {t + 0.5, {0.0}}});
  }
  return task;
}

/// Random task with integer coordinates and non-empty diamonds. Integer
/// inputs keep every causal comparison exact.
inline SummoningTask random_task(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> when(0, 5);
  std::uniform_int_distribution<int> height(0, 5);
  std::uniform_int_distribution<int> before(1, 6);

  auto spatial = [&] {
    std::vector<double> x(dim);
    for (auto& v : x) v = coord(rng);
    return x;
  };

  SummoningTask task;
  task.dim = dim;
  task.mode = TaskMode::UnrestrictedCalls;
  task.start = {-static_cast<double>(before(rng)), spatial()};
  while (task.pairs.size() < n) {
    SpacetimePoint call{static_cast<double>(when(rng)), spatial()};
    SpacetimePoint ret{call.t + height(rng), spatial()};
    if (causal_leq(call, ret, 0.0)) task.pairs.push_back({call, ret});
  }
  return task;
}

}  // namespace summoning::testing
