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

#include <cstddef>
#include <string>
#include <vector>

namespace summoning {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// "a,b,c" with each element rendered by format_number.
std::string format_coords(const std::vector<double>& xs);

/// "{1,2,3}" for a list of 1-based indices.
std::string format_index_set(const std::vector<std::size_t>& indices);

}  // namespace summoning
