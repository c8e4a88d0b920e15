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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "summoning/task.hpp"

namespace summoning {

/// Two pairs whose diamonds (or call points) fail the pairwise condition.
struct PairWitness {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

/// A set of pairs with no dominant element.
struct SubsetWitness {
  std::vector<std::size_t> indices;
  friend bool operator==(const SubsetWitness&, const SubsetWitness&) = default;
};

/// A return point outside the causal future of the start point.
struct StartWitness {
  std::size_t index;
  friend bool operator==(const StartWitness&, const StartWitness&) = default;
};

using Witness = std::variant<PairWitness, SubsetWitness, StartWitness>;

std::string to_string(const Witness& w);

struct Verdict {
  bool feasible = false;
  std::optional<Witness> witness;
  /// Chain order sigma, 1-based, present for feasible unrestricted tasks.
  std::optional<std::vector<std::size_t>> ordering;
  std::vector<std::string> diagnostics;
};

/// At most one call: every r_i >= s and every pair of diamonds causally
/// related. Pairwise geometry is checked before start reachability; the
/// witness is the first failure in that order.
Verdict check_single_call(const SummoningTask& task);

/// Any set of calls: every r_i >= s and every nonempty K has some k with
/// r_k >= c_i for all i in K. Decided by repeatedly removing the smallest
/// dominant index; a dominant element of K stays dominant in every subset
/// that contains it, so a stuck set is a genuine counterexample.
Verdict check_unrestricted(const SummoningTask& task);

inline constexpr std::size_t kMaxBruteforcePairs = 16;

/// Literal subset-by-subset check, used as an oracle for check_unrestricted.
/// Does not produce an ordering.
Verdict check_unrestricted_bruteforce(const SummoningTask& task);

/// At most one call with one empty diamond allowed: every r_i >= s and for
/// every i < j some call point c_m, m in {i, j}, precedes both returns.
Verdict check_extended(const SummoningTask& task);

/// Dispatches on task.mode.
Verdict check(const SummoningTask& task);

/// Dominance ordering sigma (1-based). Throws std::domain_error when the
/// task is infeasible under unrestricted calls.
std::vector<std::size_t> construct_ordering(const SummoningTask& task);

/// c_sigma(i) <= r_sigma(j) for all i <= j, and sigma is a permutation.
bool ordering_valid(const SummoningTask& task, const std::vector<std::size_t>& sigma);

inline constexpr std::size_t kMaxPathPairs = 8;

/// Whether one causal curve from s can visit every diamond in some order.
/// Restricted to segment diamonds whose call and return share a location.
bool exists_sequential_causal_path(const SummoningTask& task);

}  // namespace summoning
