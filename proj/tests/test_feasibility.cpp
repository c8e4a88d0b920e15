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

#include <algorithm>
#include <numeric>
#include <random>

#include "summoning/feasibility.hpp"
#include "support.hpp"

using namespace summoning;

namespace {

SummoningTask as_mode(SummoningTask task, TaskMode mode) {
  task.mode = mode;
  return task;
}

}  // namespace

TEST_CASE("single-call checker") {
  const auto cyclic = testing::fixture("cyclic-triangle");
  CHECK(check_single_call(cyclic).feasible);

  const auto spacelike = testing::fixture("spacelike-pair");
  const auto v = check_single_call(spacelike);
  CHECK_FALSE(v.feasible);
  REQUIRE(v.witness);
  CHECK(*v.witness == Witness{PairWitness{1, 2}});
  CHECK(to_string(*v.witness) == "pair (1,2)");

  auto one = testing::make_chain(1);
  CHECK(check_single_call(one).feasible);
  one.start = {5.0, {0.0}};
  const auto late = check_single_call(one);
  CHECK_FALSE(late.feasible);
  CHECK(*late.witness == Witness{StartWitness{1}});
}

TEST_CASE("unrestricted checker") {
  SUBCASE("cyclic triangle is stuck") {
    const auto v = check_unrestricted(testing::fixture("cyclic-triangle"));
    CHECK_FALSE(v.feasible);
    CHECK(*v.witness == Witness{SubsetWitness{{1, 2, 3}}});
    CHECK(to_string(*v.witness) == "subset {1,2,3}");
    CHECK_FALSE(v.ordering);
  }
  SUBCASE("nested") {
    const auto v = check_unrestricted(testing::fixture("nested"));
    CHECK(v.feasible);
    CHECK(*v.ordering == std::vector<std::size_t>{2, 1});
  }
  SUBCASE("chain") {
    const auto v = check_unrestricted(testing::fixture("chain"));
    CHECK(v.feasible);
    CHECK(*v.ordering == std::vector<std::size_t>{1, 2, 3});
  }
  SUBCASE("all-dominant triangle") {
    CHECK(check_unrestricted(testing::fixture("all-dominant-triangle")).feasible);
  }
  SUBCASE("N=1") {
    CHECK(check_unrestricted(testing::make_chain(1)).feasible);
    auto task = testing::make_chain(1);
    task.start = {1.0, {3.0}};
    CHECK_FALSE(check_unrestricted(task).feasible);
  }
}

TEST_CASE("construct_ordering and ordering_valid") {
  CHECK(construct_ordering(testing::fixture("chain")) == std::vector<std::size_t>{1, 2, 3});
  CHECK(construct_ordering(testing::fixture("nested")) == std::vector<std::size_t>{2, 1});
  CHECK_THROWS_AS(construct_ordering(testing::fixture("cyclic-triangle")), std::domain_error);

  const auto chain = testing::fixture("chain");
  CHECK(ordering_valid(chain, {1, 2, 3}));
  CHECK_FALSE(ordering_valid(chain, {2, 1, 3}));
  CHECK_FALSE(ordering_valid(chain, {1, 2}));
  CHECK_FALSE(ordering_valid(chain, {1, 1, 3}));
}

TEST_CASE("greedy and brute force agree on random tasks") {
  std::mt19937_64 rng(2024);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto task = testing::random_task(rng, 1 + trial % 6, 1 + trial % 3);
    const auto greedy = check_unrestricted(task);
    const auto brute = check_unrestricted_bruteforce(task);
    CAPTURE(serialize_task(task));
    REQUIRE(greedy.feasible == brute.feasible);
    (greedy.feasible ? feasible : infeasible)++;

    if (greedy.feasible) {
      REQUIRE(greedy.ordering);
      CHECK(ordering_valid(task, *greedy.ordering));
      CHECK(check_single_call(task).feasible);
    } else {
      CHECK(greedy.witness);
    }
  }
  CHECK(feasible > 50);
  CHECK(infeasible > 50);
}

TEST_CASE("stuck subsets really have no dominant element") {
  std::mt19937_64 rng(99);
  int seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto task = testing::random_task(rng, 3 + trial % 4, 2);
    const auto v = check_unrestricted(task);
    if (v.feasible) continue;
    const auto* subset = std::get_if<SubsetWitness>(&*v.witness);
    if (!subset) continue;
    ++seen;
    for (std::size_t k : subset->indices) {
      const bool dominates = std::ranges::all_of(
          subset->indices, [&](std::size_t i) { return task.reaches(i, k); });
      CHECK_FALSE(dominates);
    }
  }
  CHECK(seen > 10);
}

TEST_CASE("extended checker") {
  SUBCASE("one empty diamond") {
    const auto v = check_extended(testing::fixture("extended"));
    CHECK(v.feasible);
    REQUIRE(v.diagnostics.size() == 1);
    CHECK(v.diagnostics[0].find("one empty diamond") != std::string::npos);
  }
  SUBCASE("no call point reaches both returns") {
    const auto v = check_extended(testing::fixture("extended-infeasible"));
    CHECK_FALSE(v.feasible);
    CHECK(*v.witness == Witness{PairWitness{1, 2}});
  }
  SUBCASE("nested") {
    const auto v = check_extended(as_mode(testing::fixture("nested"), TaskMode::ExtendedGeometry));
    CHECK(v.feasible);
    CHECK(v.diagnostics == std::vector<std::string>{"no empty diamond"});
  }
  SUBCASE("agrees with the single-call checker when nothing is empty") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const auto task = testing::random_task(rng, 2 + trial % 4, 1 + trial % 2);
      CHECK(check_extended(task).feasible == check_single_call(task).feasible);
    }
  }
}

TEST_CASE("check dispatches on mode") {
  const auto cyclic = testing::fixture("cyclic-triangle");
  CHECK(check(as_mode(cyclic, TaskMode::SingleCallGuaranteed)).feasible);
  CHECK_FALSE(check(as_mode(cyclic, TaskMode::UnrestrictedCalls)).feasible);
  CHECK(check(as_mode(cyclic, TaskMode::ExtendedGeometry)).feasible);
}

TEST_CASE("sequential causal path") {
  CHECK_FALSE(exists_sequential_causal_path(testing::fixture("all-dominant-triangle")));
  CHECK(exists_sequential_causal_path(testing::fixture("chain")));
  CHECK(exists_sequential_causal_path(testing::make_chain(1)));
  CHECK_THROWS_AS(exists_sequential_causal_path(testing::fixture("cyclic-triangle")),
                  std::invalid_argument);

  auto far = testing::make_chain(1);
  far.start = {0.9, {5.0}};
  CHECK_FALSE(exists_sequential_causal_path(far));
}
