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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails or runs over its time budget.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "golden.hpp"
#include "summoning/feasibility.hpp"
#include "summoning/oracle.hpp"
#include "summoning/protocol.hpp"
#include "support.hpp"

using namespace summoning;
using namespace summoning::testing;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Check()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs >= budget_s) {
    c.expect(false, "over budget");
    c.ok = false;
  }
  failures += c.ok ? 0 : 1;
  std::printf("criterion %d: %s  %s (%.3f s%s)%s%s\n", id, c.ok ? "PASS" : "FAIL", title, secs,
              budget_s > 0 ? (", limit " + std::to_string(static_cast<int>(budget_s)) + " s").c_str()
                           : "",
              c.ok ? "" : ": ", c.detail.c_str());
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  for (auto& a : args) replace_all(a, "{fx}", SUMMONING_FIXTURE_DIR);
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::vector<SummoningTask> random_tasks() {
  std::mt19937_64 rng(20260101);
  std::vector<SummoningTask> tasks;
  for (int k = 0; k < 500; ++k) {
    tasks.push_back(random_task(rng, 1 + k % 6, 1 + (k / 6) % 3));
  }
  return tasks;
}

// Non-empty diamond with a random tilt strictly inside the cone.
CausalDiamond random_diamond(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> h(0.1, 3.0);
  std::uniform_real_distribution<double> tilt(-0.6, 0.6);
  SpacetimePoint call{u(rng), std::vector<double>(dim)};
  for (auto& v : call.x) v = u(rng);
  const double height = h(rng);
  SpacetimePoint ret{call.t + height, call.x};
  ret.x[0] += tilt(rng) * height;
  return {call, ret};
}

bool decisive(const SpacetimePoint& a, const SpacetimePoint& b) {
  return std::abs(a.t - b.t) >= 1e-6 && std::abs(interval2(a, b)) >= 1e-6;
}

}  // namespace

int main() {
  const auto tasks = random_tasks();
  std::vector<Verdict> greedy(tasks.size());

  criterion(1, "cyclic triangle: feasible with one call, infeasible with many", 1.0, [] {
    Check c;
    std::string out;
    c.expect(cli({"--mode", "single", "check", "{fx}/cyclic-triangle.json"}) == kExitOk,
             "single-call check did not exit 0");
    c.expect(cli({"--mode", "multi", "check", "{fx}/cyclic-triangle.json"}, &out) == kExitNegative,
             "multi-call check did not exit 1");
    c.expect(out.find("witness: subset {1,2,3}") != std::string::npos, "witness is not {1,2,3}");
    return c;
  });

  criterion(2, "all-dominant triangle: feasible but no sequential causal path", 1.0, [] {
    Check c;
    c.expect(cli({"--mode", "multi", "check", "{fx}/all-dominant-triangle.json"}) == kExitOk,
             "multi-call check did not exit 0");
    c.expect(!exists_sequential_causal_path(fixture("all-dominant-triangle")),
             "a sequential path was found");
    return c;
  });

  criterion(3, "greedy checker agrees with brute force on 500 random tasks", 30.0, [&] {
    Check c;
    int agree = 0;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      greedy[k] = check_unrestricted(tasks[k]);
      agree += greedy[k].feasible == check_unrestricted_bruteforce(tasks[k]).feasible;
    }
    c.expect(agree == 500, std::to_string(500 - agree) + " disagreements");
    return c;
  });

  criterion(4, "feasible with many calls implies feasible with one call", 0.0, [&] {
    Check c;
    int bad = 0;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      bad += greedy[k].feasible && !check_single_call(tasks[k]).feasible;
    }
    c.expect(bad == 0, std::to_string(bad) + " counterexamples");
    return c;
  });

  criterion(5, "chain protocol on 5 collinear diamonds, all 32 patterns", 5.0, [] {
    Check c;
    const auto plan = plan_chain_protocol(make_chain(5));
    PatternOutcomes outcomes;
    for (const auto& p : enumerate_patterns(plan.task)) {
      const auto run = simulate(plan, p);
      outcomes.emplace(p, run.outcome);
      int handed = 0;
      for (const auto& h : run.custody) handed += std::holds_alternative<QuantumToken::Returned>(h);
      const auto tag = " on " + p.to_string();
      c.expect(handed <= 1, "state handed over twice" + tag);
      c.expect(log_is_causal(run.log, plan.task.tol), "acausal log" + tag);
      if (p.size() == 0) {
        c.expect(!run.outcome.returned(), "return without a call");
      } else {
        c.expect(run.outcome.returned() && handed == 1, "no return" + tag);
        c.expect(p.contains(run.outcome.index), "returned at an uncalled index" + tag);
      }
    }
    c.expect(outcomes.size() == 32, "pattern count");
    c.expect(outcomes == simulate_all_patterns(plan), "parallel sweep differs");
    c.expect(audit_no_signalling(outcomes, plan.task).pass(), "no-signalling audit failed");
    return c;
  });

  criterion(6, "oracle and parity certificate on the cyclic triangle; chain N=2", 5.0, [] {
    Check c;
    const auto cyclic = fixture("cyclic-triangle");
    const auto r = exhaustive_search(cyclic);
    c.expect(r.space == 4096 && r.examined == 4096, "search space is not 4096");
    c.expect(!r.strategy, "a strategy was found");
    const auto cert = parity_certificate(cyclic, {1, 2, 3});
    for (const auto& e : cert.entries) c.expect(e.even, "odd Q_" + std::to_string(e.i));
    c.expect(cert.entries.size() == 3 && cert.pairing_verified, "pairing not verified");
    c.expect(cert.required_total == 7 && cert.contradiction, "required total is not 7");

    const auto chain = make_chain(2);
    c.expect(exhaustive_search(chain).strategy.has_value(), "chain N=2 has no strategy");
    const auto plan = plan_chain_protocol(chain);
    c.expect(strategy_valid(induced_strategy(simulate_all_patterns(plan), chain), chain),
             "simulator strategy is invalid");
    return c;
  });

  criterion(7, "two-call protocol with one empty diamond", 1.0, [] {
    Check c;
    std::string out;
    c.expect(cli({"check", "{fx}/extended.json"}, &out) == kExitOk, "check did not exit 0");
    c.expect(out.find("one empty diamond") != std::string::npos, "diagnostic missing");
    const auto task = fixture("extended");
    c.expect(simulate_two_call_extended(task, CallPattern::of({1})).outcome ==
                 Outcome::returned_at(1),
             "{1} did not return at 1");
    c.expect(simulate_two_call_extended(task, CallPattern::of({2})).outcome ==
                 Outcome::returned_at(2),
             "{2} did not return at 2");
    c.expect(simulate_two_call_extended(task, {}).outcome == Outcome::no_return(2),
             "empty pattern is not NoReturn(ReconstructedAt r_2)");
    return c;
  });

  criterion(8, "closed-form diamond relation against the sampling oracle", 10.0, [] {
    Check c;
    std::mt19937_64 rng(77);
    int pairs = 0, sampled_true = 0;
    while (pairs < 1000) {
      const std::size_t dim = 1 + pairs % 3;
      const auto a = random_diamond(rng, dim), b = random_diamond(rng, dim);
      if (!decisive(a.ret, b.call) || !decisive(b.ret, a.call)) continue;
      ++pairs;
      const bool closed = diamonds_causally_related(a, b);
      const bool sampled = sample_witness_related(a, b, 200, pairs);
      sampled_true += sampled;
      c.expect(!sampled || closed, "sampler found a witness the closed form denies");
    }
    c.expect(sampled_true > 0 && sampled_true < pairs, "degenerate mix");

    // Spacelike constructions: the second diamond is moved away along a
    // random direction by more than both diamonds can span in time.
    for (int k = 0; k < 200; ++k) {
      const std::size_t dim = 1 + k % 3;
      const auto a = random_diamond(rng, dim);
      auto b = random_diamond(rng, dim);
      const double reach = std::max(a.ret.t, b.ret.t) - std::min(a.call.t, b.call.t);
      const double gap = 2 * reach + 8.0 + 1e-3;
      for (auto* p : {&b.call, &b.ret}) p->x[dim - 1] += gap;
      c.expect(!diamonds_causally_related(a, b), "spacelike construction related");
      c.expect(!sample_witness_related(a, b, 200, 5000 + k), "sampler related a spacelike pair");
    }
    return c;
  });

  criterion(9, "round trip and CLI golden contract", 0.0, [] {
    Check c;
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(SUMMONING_FIXTURE_DIR)) {
      if (entry.path().stem() == "malformed") continue;
      ++files;
      const auto task = load_task_file(entry.path().string());
      c.expect(parse_task(serialize_task(task)) == task, "round trip: " + entry.path().string());
    }
    c.expect(files == 9, "fixture count");

    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
      const auto task = random_task(rng, 1 + k % 6, 1 + k % 3);
      c.expect(parse_task(serialize_task(task)) == task, "random round trip");
    }

    const auto cases = load_golden_cases();
    c.expect(cases.size() > 70, "golden manifest missing");
    for (const auto& g : cases) {
      const auto run = run_golden_case(g);
      c.expect(std::to_string(run.exit) == g.exit, "exit code of " + g.name);
      c.expect(run.out == slurp(golden_path(g.name + ".out")), "stdout of " + g.name);
      c.expect(run.err == slurp(golden_path(g.name + ".err")), "stderr of " + g.name);
    }
    return c;
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
