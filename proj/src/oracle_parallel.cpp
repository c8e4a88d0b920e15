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


#include <algorithm>
#include <limits>

#include "summoning/oracle.hpp"

namespace summoning {

SearchResult exhaustive_search(const SummoningTask& task, std::uint64_t cap,
                               std::uint64_t block) {
  const StrategySpace space(task, cap);
  if (block == 0) block = 1;

  SearchResult result;
  result.space = space.size();
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

  for (std::uint64_t start = 0; start < space.size(); start += block) {
    const auto begin = static_cast<std::int64_t>(start);
    const auto end = static_cast<std::int64_t>(std::min(space.size(), start + block));
    std::uint64_t best = kNone;

    #pragma omp parallel for schedule(static) reduction(min : best)
    for (std::int64_t g = begin; g < end; ++g) {
      const auto index = static_cast<std::uint64_t>(g);
      if (index < best && space.valid_at(index)) best = index;
    }

    if (best != kNone) {
      result.index = best;
      result.examined = best + 1;
      result.strategy = space.at(best);
      return result;
    }
  }
  result.examined = space.size();
  return result;
}

}  // namespace summoning
