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


#include <string>
#include <vector>

#include "protocol_internal.hpp"

namespace summoning {

PatternOutcomes simulate_all_patterns(const ProtocolPlan& plan) {
  detail::require_pattern_range(plan);
  const auto count = static_cast<std::int64_t>(std::int64_t{1} << plan.task.size());
  std::vector<Outcome> by_mask(static_cast<std::size_t>(count));
  std::vector<std::string> errors(static_cast<std::size_t>(count));

  // Runs are independent; exceptions cannot leave the parallel region.
  #pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t q = 0; q < count; ++q) {
    try {
      by_mask[q] = detail::run_and_check(plan, CallPattern(static_cast<std::uint64_t>(q)));
    } catch (const std::exception& e) {
      errors[q] = e.what();
    }
  }

  for (const auto& error : errors) {
    if (!error.empty()) throw ProtocolViolation(error);
  }
  return detail::collect(by_mask);
}

}  // namespace summoning
