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


// Serial reference vs OpenMP kernels on the two data-parallel sweeps:
// the strategy search and the all-patterns protocol run.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "summoning/oracle.hpp"
#include "summoning/protocol.hpp"

using namespace summoning;

namespace {

SummoningTask chain(std::size_t n) {
  SummoningTask task;
  task.dim = 1;
  task.start = {0.0, {0.0}};
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i);
    task.pairs.push_back({{t, {0.0}}, {t + 0.5, {0.0}}});
  }
  return task;
}

// Unit square, corners as calls. r_1 and r_2 sit at the centroid of three
// consecutive corners and see those three; r_3 and r_4 sit at edge midpoints
// and see two. Table bits 8 + 8 + 4 + 4 = 24 and no return sees every call,
// so the sweep covers all 2^24 strategies without a hit.
SummoningTask square_sweep() {
  SummoningTask task;
  task.dim = 2;
  task.start = {-10.0, {0.5, 0.5}};
  const double corner[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 4; ++i) {
    const auto* a = corner[i];
    const auto* b = corner[(i + 1) % 4];
    const auto* c = corner[(i + 2) % 4];
    SpacetimePoint ret = i < 2 ? SpacetimePoint{0.85, {(a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3}}
                               : SpacetimePoint{0.6, {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2}};
    task.pairs.push_back({{0.0, {a[0], a[1]}}, ret});
  }
  return task;
}

double seconds(const std::function<void()>& fn, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto square = square_sweep();
  const auto space = StrategySpace(square).size();
  const double search_serial = seconds([&] { (void)exhaustive_search_serial(square); }, 1);
  const double search_omp = seconds([&] { (void)exhaustive_search(square); }, 1);
  std::printf("strategy search, %llu strategies: serial %.3f s, openmp %.3f s, speedup %.2fx\n",
              static_cast<unsigned long long>(space), search_serial, search_omp,
              search_serial / search_omp);

  const auto plan = plan_chain_protocol(chain(14));
  const double sweep_serial = seconds([&] { (void)simulate_all_patterns_serial(plan); }, 1);
  const double sweep_omp = seconds([&] { (void)simulate_all_patterns(plan); }, 1);
  std::printf("pattern sweep, 2^14 runs: serial %.3f s, openmp %.3f s, speedup %.2fx\n",
              sweep_serial, sweep_omp, sweep_serial / sweep_omp);
  return 0;
}
