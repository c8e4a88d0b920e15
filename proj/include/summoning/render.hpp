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

#include <string>
#include <vector>

#include "summoning/task.hpp"

namespace summoning {

struct LabeledPoint {
  std::string label;  // "s", "c<i>" or "r<i>"
  SpacetimePoint point;
};

/// s, c1, r1, c2, r2, ...
std::vector<LabeledPoint> labeled_points(const SummoningTask& task);

/// Digraph over the task's points with one edge per covering pair of the
/// causal order (a < b with nothing strictly between).
std::string render_dot(const SummoningTask& task);

/// Point rows (kind=point, label, t, x...) followed by one row per ordered
/// causal pair (kind=causal, from, to).
std::string render_csv(const SummoningTask& task);

}  // namespace summoning
