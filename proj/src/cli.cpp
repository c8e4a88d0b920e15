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


#include "summoning/cli.hpp"

#include <charconv>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "summoning/feasibility.hpp"
#include "summoning/format.hpp"
#include "summoning/oracle.hpp"
#include "summoning/protocol.hpp"
#include "summoning/render.hpp"

namespace summoning {

namespace {

/// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string command;
  std::string file;
  std::string mode;
  std::optional<double> tol;
  bool quiet = false;
  std::string calls;
  bool all = false;
  std::uint64_t cap = kDefaultStrategyCap;
  std::string format;
};

SummoningTask load(const CliConfig& cfg) {
  SummoningTask task;
  try {
    task = load_task_file(cfg.file);
  } catch (const ParseError& e) {
    throw UsageError(cfg.file + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  if (!cfg.mode.empty()) {
    auto mode = parse_mode(cfg.mode);
    if (!mode) throw UsageError("unknown mode \"" + cfg.mode + "\" (single, multi, extended)");
    task.mode = *mode;
  }
  if (cfg.tol) task.tol = *cfg.tol;
  return task;
}

void require_valid_input(const SummoningTask& task, TaskMode rules) {
  const auto report = validate(task, rules);
  if (report.ok()) return;
  auto text = report.to_string();
  text.pop_back();
  throw UsageError("invalid task\n" + text);
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? " " : "") + std::to_string(xs[k]);
  return out;
}

CallPattern parse_calls(const std::string& spec, std::size_t n) {
  if (spec == "none") return CallPattern{};
  std::vector<std::size_t> indices;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    long long value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || end != item.data() + item.size()) {
      throw UsageError("bad call index \"" + item + "\"");
    }
    if (value < 1) throw UsageError("indices are 1-based, got " + item);
    if (static_cast<std::size_t>(value) > n) {
      throw UsageError("call index " + item + " exceeds the " + std::to_string(n) + " pairs");
    }
    indices.push_back(static_cast<std::size_t>(value));
  }
  if (indices.empty()) throw UsageError("empty call list (use --calls none)");
  return CallPattern::of(indices);
}

int cmd_check(const CliConfig& cfg, std::ostream& out) {
  const auto task = load(cfg);
  require_valid_input(task, task.mode);
  const Verdict v = check(task);
  out << "mode: " << mode_name(task.mode) << '\n';
  out << "verdict: " << (v.feasible ? "feasible" : "infeasible") << '\n';
  if (v.witness) out << "witness: " << to_string(*v.witness) << '\n';
  if (v.ordering) out << "ordering: " << join(*v.ordering) << '\n';
  for (const auto& d : v.diagnostics) out << "diagnostic: " << d << '\n';
  return v.feasible ? kExitOk : kExitNegative;
}

int cmd_order(const CliConfig& cfg, std::ostream& out) {
  const auto task = load(cfg);
  require_valid_input(task, TaskMode::UnrestrictedCalls);
  const Verdict v = check_unrestricted(task);
  if (!v.feasible) {
    out << "no ordering, witness: " << to_string(*v.witness) << '\n';
    return kExitNegative;
  }
  out << "ordering: " << join(*v.ordering) << '\n';
  return kExitOk;
}

void print_run(const CallPattern& calls, const RunResult& run, bool quiet, std::ostream& out) {
  out << "calls " << calls.to_string() << ": " << run.outcome.to_string() << '\n';
  if (!quiet) out << run.log.render();
}

int cmd_simulate(const CliConfig& cfg, std::ostream& out) {
  const auto task = load(cfg);
  if (cfg.all == !cfg.calls.empty()) throw UsageError("simulate needs exactly one of --calls or --all");
  require_valid_input(task, task.mode);

  if (task.mode == TaskMode::ExtendedGeometry) {
    if (task.size() != 2) throw UsageError("extended simulation needs exactly two pairs");
    const Verdict v = check_extended(task);
    if (!v.feasible) {
      out << "infeasible, witness: " << to_string(*v.witness) << '\n';
      return kExitNegative;
    }
    const auto patterns =
        cfg.all ? enumerate_patterns(task) : std::vector{parse_calls(cfg.calls, task.size())};
    for (const auto& p : patterns) {
      if (p.size() > 1) throw UsageError("extended mode allows at most one call");
      print_run(p, simulate_two_call_extended(task, p), cfg.quiet, out);
    }
    return kExitOk;
  }

  const Verdict v = check_unrestricted(task);
  if (!v.feasible) {
    out << "no chain protocol, infeasible under unrestricted calls, witness: "
        << to_string(*v.witness) << '\n';
    return kExitNegative;
  }
  std::optional<CallPattern> calls;
  if (!cfg.all) {
    calls = parse_calls(cfg.calls, task.size());
    if (task.mode == TaskMode::SingleCallGuaranteed && calls->size() > 1) {
      throw UsageError("single mode allows at most one call");
    }
  }
  const ProtocolPlan plan = plan_chain_protocol(task);
  out << "chain: " << join(plan.ordering) << '\n';

  if (calls) {
    print_run(*calls, simulate(plan, *calls), cfg.quiet, out);
    return kExitOk;
  }

  for (const auto& p : enumerate_patterns(task)) {
    print_run(p, simulate(plan, p), cfg.quiet, out);
  }
  if (task.mode == TaskMode::UnrestrictedCalls) {
    const auto results = simulate_all_patterns(plan);
    std::size_t returns = 0;
    for (const auto& [p, o] : results) returns += o.returned() ? 1 : 0;
    out << "outcomes: " << results.size() << " (" << returns << " returned, "
        << results.size() - returns << " no-return)\n";
    out << audit_no_signalling(results, task).to_string();
  }
  return kExitOk;
}

int cmd_oracle(const CliConfig& cfg, std::ostream& out) {
  const auto task = load(cfg);
  require_valid_input(task, TaskMode::UnrestrictedCalls);
  SearchResult found;
  try {
    found = exhaustive_search(task, cfg.cap);
  } catch (const CapExceeded& e) {
    throw UsageError(e.what());
  }

  if (found.strategy) {
    out << "valid strategy found at index " << *found.index << " (examined " << found.examined
        << " of " << found.space << ")\n";
    if (!cfg.quiet) out << found.strategy->to_string();
    return kExitOk;
  }

  const Verdict v = check_unrestricted(task);
  if (v.feasible) {
    throw ProtocolViolation("no strategy found for a task the checker accepts");
  }
  if (const auto* subset = std::get_if<SubsetWitness>(&*v.witness)) {
    const auto cert = parity_certificate(task, subset->indices, cfg.cap);
    out << "no valid strategy among " << found.space << "; parity: Q_i even, need "
        << cert.required_total << '\n';
    if (!cfg.quiet) out << cert.to_string();
  } else {
    out << "no valid strategy among " << found.space << "; " << to_string(*v.witness) << '\n';
  }
  return kExitNegative;
}

int cmd_path(const CliConfig& cfg, std::ostream& out) {
  const auto task = load(cfg);
  require_valid_input(task, TaskMode::UnrestrictedCalls);
  bool path = false;
  try {
    path = exists_sequential_causal_path(task);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  out << "sequential causal path: " << (path ? "exists" : "none") << '\n';
  return path ? kExitOk : kExitNegative;
}

int cmd_render(const CliConfig& cfg, std::ostream& out) {
  if (cfg.format != "dot" && cfg.format != "csv") {
    throw UsageError("unknown format \"" + cfg.format + "\" (dot, csv)");
  }
  const auto task = load(cfg);
  require_valid_input(task, TaskMode::ExtendedGeometry);
  out << (cfg.format == "dot" ? render_dot(task) : render_csv(task));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Feasibility, protocols and impossibility certificates for summoning tasks",
               "summon"};
  app.require_subcommand(1);
  app.add_option("--mode", cfg.mode, "Override the task mode: single, multi, extended");
  app.add_option("--tol", cfg.tol, "Override the task tolerance")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", cfg.quiet, "Print verdicts only");

  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", cfg.file, "Task file")->required();
    return sub;
  };
  add("check", "Decide feasibility under the task's mode");
  add("order", "Print a dominance ordering of the diamonds");
  auto* simulate_cmd = add("simulate", "Run the teleportation protocol");
  simulate_cmd->add_option("--calls", cfg.calls, "Called indices, e.g. 1,3, or none");
  simulate_cmd->add_flag("--all", cfg.all, "Run every call pattern");
  auto* oracle_cmd = add("oracle", "Search all causal strategies");
  oracle_cmd->add_option("--cap", cfg.cap, "Largest strategy space to search");
  add("path", "Look for one causal path through all segment diamonds");
  auto* render_cmd = add("render", "Emit the causal order as DOT or CSV");
  render_cmd->add_option("--format", cfg.format, "dot or csv")->required();

  std::vector<std::string> storage{"summon"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "order") return cmd_order(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    if (cfg.command == "path") return cmd_path(cfg, out);
    if (cfg.command == "render") return cmd_render(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ProtocolViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace summoning
