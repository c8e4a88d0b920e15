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


#include "summoning/feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "summoning/format.hpp"

namespace summoning {

std::string to_string(const Witness& w) {
  struct Printer {
    std::string operator()(const PairWitness& p) const {
      return "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
    }
    std::string operator()(const SubsetWitness& s) const {
      return "subset " + format_index_set(s.indices);
    }
    std::string operator()(const StartWitness& s) const {
      return "return " + std::to_string(s.index) + " unreachable from start";
    }
  };
  return std::visit(Printer{}, w);
}

namespace {

std::optional<std::size_t> first_unreachable_return(const SummoningTask& task) {
  for (std::size_t i = 1; i <= task.size(); ++i) {
    if (!causal_leq(task.start, task.ret(i), task.tol)) return i;
  }
  return std::nullopt;
}

Verdict feasible() {
  Verdict v;
  v.feasible = true;
  return v;
}

Verdict infeasible(Witness w) {
  Verdict v;
  v.feasible = false;
  v.witness = std::move(w);
  return v;
}

}  // namespace

Verdict check_single_call(const SummoningTask& task) {
  require_valid(task, TaskMode::SingleCallGuaranteed);
  for (std::size_t i = 1; i <= task.size(); ++i) {
    for (std::size_t j = i + 1; j <= task.size(); ++j) {
      if (!diamonds_causally_related(task.pair(i), task.pair(j), task.tol)) {
        return infeasible(PairWitness{i, j});
      }
    }
  }
  if (auto bad = first_unreachable_return(task)) return infeasible(StartWitness{*bad});
  return feasible();
}

Verdict check_unrestricted(const SummoningTask& task) {
  require_valid(task, TaskMode::UnrestrictedCalls);

  std::vector<std::size_t> remaining(task.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{1});
  std::vector<std::size_t> eliminated;
  eliminated.reserve(task.size());

  while (!remaining.empty()) {
    auto dominant = std::find_if(remaining.begin(), remaining.end(), [&](std::size_t k) {
      return std::all_of(remaining.begin(), remaining.end(),
                         [&](std::size_t i) { return task.reaches(i, k); });
    });
    if (dominant == remaining.end()) return infeasible(SubsetWitness{remaining});
    eliminated.push_back(*dominant);
    remaining.erase(dominant);
  }
  if (auto bad = first_unreachable_return(task)) return infeasible(StartWitness{*bad});

  Verdict v = feasible();
  v.ordering = std::vector<std::size_t>(eliminated.rbegin(), eliminated.rend());
  return v;
}

Verdict check_unrestricted_bruteforce(const SummoningTask& task) {
  // Empty diamonds are allowed through: the singleton subsets reject them.
  require_valid(task, TaskMode::ExtendedGeometry);
  const std::size_t n = task.size();
  if (n > kMaxBruteforcePairs) {
    throw std::length_error("brute-force check is limited to " +
                            std::to_string(kMaxBruteforcePairs) + " pairs");
  }
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const auto subset = CallPattern(mask).indices();
    bool has_dominant = false;
    for (std::size_t k : subset) {
      bool dominates = true;
      for (std::size_t i : subset) dominates = dominates && task.reaches(i, k);
      if (dominates) {
        has_dominant = true;
        break;
      }
    }
    if (!has_dominant) return infeasible(SubsetWitness{subset});
  }
  if (auto bad = first_unreachable_return(task)) return infeasible(StartWitness{*bad});
  return feasible();
}

Verdict check_extended(const SummoningTask& task) {
  require_valid(task, TaskMode::ExtendedGeometry);
  for (std::size_t i = 1; i <= task.size(); ++i) {
    for (std::size_t j = i + 1; j <= task.size(); ++j) {
      const bool via_i = task.reaches(i, i) && task.reaches(i, j);
      const bool via_j = task.reaches(j, i) && task.reaches(j, j);
      if (!via_i && !via_j) return infeasible(PairWitness{i, j});
    }
  }
  if (auto bad = first_unreachable_return(task)) return infeasible(StartWitness{*bad});

  std::vector<std::size_t> empties;
  for (std::size_t i = 1; i <= task.size(); ++i) {
    if (task.pair(i).empty(task.tol)) empties.push_back(i);
  }
  // Each pair (i, j) needs one of c_i <= r_i or c_j <= r_j, so a second empty
  // diamond would have failed the pairwise loop above.
  if (empties.size() > 1) {
    throw std::logic_error("feasible extended task with several empty diamonds");
  }
  Verdict v = feasible();
  v.diagnostics.push_back(empties.empty()
                              ? "no empty diamond"
                              : "one empty diamond (pair " + std::to_string(empties[0]) + ")");
  return v;
}

Verdict check(const SummoningTask& task) {
  switch (task.mode) {
    case TaskMode::SingleCallGuaranteed: return check_single_call(task);
    case TaskMode::UnrestrictedCalls: return check_unrestricted(task);
    case TaskMode::ExtendedGeometry: return check_extended(task);
  }
  throw std::logic_error("unknown task mode");
}

std::vector<std::size_t> construct_ordering(const SummoningTask& task) {
  auto verdict = check_unrestricted(task);
  if (!verdict.feasible) {
    throw std::domain_error("no dominance ordering: " + to_string(*verdict.witness));
  }
  return *verdict.ordering;
}

bool ordering_valid(const SummoningTask& task, const std::vector<std::size_t>& sigma) {
  if (sigma.size() != task.size()) return false;
  std::vector<std::size_t> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != k + 1) return false;
  }
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      if (!task.reaches(sigma[i], sigma[j])) return false;
    }
  }
  return true;
}

bool exists_sequential_causal_path(const SummoningTask& task) {
  require_valid(task, TaskMode::UnrestrictedCalls);
  if (task.size() > kMaxPathPairs) {
    throw std::length_error("path search is limited to " + std::to_string(kMaxPathPairs) +
                            " pairs");
  }
  for (std::size_t i = 1; i <= task.size(); ++i) {
    SpacetimePoint flat_call{0.0, task.call(i).x};
    SpacetimePoint flat_ret{0.0, task.ret(i).x};
    if (spatial_distance(flat_call, flat_ret) > task.tol) {
      throw std::invalid_argument("pair " + std::to_string(i) +
                                  " is not a segment diamond (call and return locations differ)");
    }
  }

  std::vector<std::size_t> perm(task.size());
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  do {
    // Arriving as early as possible never hurts later hops.
    double now = task.start.t;
    const SpacetimePoint* here = &task.start;
    bool ok = true;
    for (std::size_t idx : perm) {
      const auto& seg = task.pair(idx);
      const double arrival = std::max(seg.call.t, now + spatial_distance(*here, seg.call));
      if (arrival > seg.ret.t + task.tol) {
        ok = false;
        break;
      }
      now = arrival;
      here = &seg.call;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace summoning
