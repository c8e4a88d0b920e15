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

#include "summoning/protocol.hpp"

namespace summoning::detail {

/// simulate() plus the per-run contract: exactly one return, at a called
/// index, for nonempty patterns, none for the empty pattern, and a causal log.
Outcome run_and_check(const ProtocolPlan& plan, const CallPattern& pattern);

void require_pattern_range(const ProtocolPlan& plan);

PatternOutcomes collect(const std::vector<Outcome>& by_mask);

}  // namespace summoning::detail
