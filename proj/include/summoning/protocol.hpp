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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "summoning/oracle.hpp"
#include "summoning/task.hpp"

namespace summoning {

/// Raised when a run breaks causality or no-cloning; always a bug.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A maximally entangled pair shared between two agent locations.
struct EntangledPair {
  std::size_t id = 0;
  std::vector<double> loc_a;
  std::vector<double> loc_b;
  bool consumed = false;

  void consume();
};

struct TeleportData {
  std::size_t hop;  // 0 for the start point, k for chain position k
};

struct CallReceivedStop {
  std::size_t index;  // pair index whose call was received
};

/// Classical message sent in all directions at light speed.
struct ClassicalBroadcast {
  SpacetimePoint origin;
  std::variant<TeleportData, CallReceivedStop> payload;

  bool available_at(const SpacetimePoint& q, double tol) const {
    return causal_leq(origin, q, tol);
  }
  std::string label() const;
};

/// An agent's half of an entangled pair, carried from a call point to a
/// return point.
struct QuantumTransfer {
  SpacetimePoint from;
  SpacetimePoint to;
  std::size_t pair_id = 0;
  std::size_t from_index = 0;  // pair index of the sending call point
};

/// Custody of the unknown state. Holds exactly one value at any time and
/// can be handed over at most once.
class QuantumToken {
 public:
  struct AtLocation {
    std::vector<double> x;
    double since = 0.0;
  };
  struct InTransitTo {
    SpacetimePoint target;
  };
  struct Returned {
    std::size_t index;
  };
  struct Unreturned {};
  using Custody = std::variant<AtLocation, InTransitTo, Returned, Unreturned>;

  explicit QuantumToken(std::size_t lineage, Custody initial);

  std::size_t lineage() const { return lineage_; }
  const Custody& custody() const { return custody_; }
  const std::vector<Custody>& history() const { return history_; }
  bool returned() const { return std::holds_alternative<Returned>(custody_); }

  /// Throws ProtocolViolation once the state has been handed over.
  void move(Custody next);
  /// Requires the state to be in transit to `at`; throws otherwise.
  void hand_over(std::size_t index, const SpacetimePoint& at, double tol);
  /// Closes the run: a state that was never handed over becomes Unreturned.
  void finish();

 private:
  std::size_t lineage_;
  Custody custody_;
  std::vector<Custody> history_;
};

std::string to_string(const QuantumToken::Custody& c);

struct LogEntry {
  SpacetimePoint where;
  std::string action;
  std::vector<ClassicalBroadcast> cites;
  std::optional<QuantumTransfer> quantum;
};

struct EventLog {
  std::vector<LogEntry> entries;

  /// One line per entry: t=<time> @(<coords>) <ACTION> [<justifications>]
  std::string render() const;
};

/// Every cited broadcast and every received transfer originates in the
/// causal past of the entry's point.
bool log_is_causal(const EventLog& log, double tol);

struct Outcome {
  enum class Kind { ReturnedAt, NoReturn };
  Kind kind = Kind::NoReturn;
  std::size_t index = 0;                        // for ReturnedAt
  std::optional<std::size_t> reconstructed_at;  // for NoReturn

  static Outcome returned_at(std::size_t i) { return {Kind::ReturnedAt, i, std::nullopt}; }
  static Outcome no_return(std::optional<std::size_t> at = std::nullopt) {
    return {Kind::NoReturn, 0, at};
  }
  bool returned() const { return kind == Kind::ReturnedAt; }
  std::string to_string() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct ProtocolPlan {
  SummoningTask task;
  std::vector<std::size_t> ordering;  // sigma, 1-based pair indices
  std::vector<EntangledPair> pairs;   // pair k links chain positions k-1 and k
};

/// Orders the diamonds and lays out one entangled pair per hop of the chain
/// s -> c_sigma(1) -> ... -> c_sigma(N). Throws std::domain_error when the
/// task is infeasible under unrestricted calls.
ProtocolPlan plan_chain_protocol(const SummoningTask& task);

struct RunResult {
  Outcome outcome;
  EventLog log;
  std::vector<ClassicalBroadcast> broadcasts;
  std::vector<EntangledPair> pairs;  // final state
  std::vector<QuantumToken::Custody> custody;  // token history
};

/// One run of the teleportation chain under a call pattern.
///
/// The agent at position k acts on its own call only: if called it
/// broadcasts a stop and sends its half of pair k to its return point,
/// otherwise it teleports that half onward through pair k+1 (the last agent
/// sends it to its return point instead). A return point reconstructs once
/// the teleport data of every earlier hop is visible, and hands over only
/// when no earlier chain position's stop is visible.
RunResult simulate(const ProtocolPlan& plan, const CallPattern& pattern);

using PatternOutcomes = std::map<CallPattern, Outcome>;

/// All 2^N patterns, checking the return contract and log causality of every
/// run. OpenMP over patterns; simulate_all_patterns_serial is the reference.
PatternOutcomes simulate_all_patterns(const ProtocolPlan& plan);
PatternOutcomes simulate_all_patterns_serial(const ProtocolPlan& plan);

struct SignallingViolation {
  std::size_t index;  // return point
  CallPattern first;
  CallPattern second;
};

struct NoSignallingReport {
  std::vector<SignallingViolation> violations;
  bool pass() const { return violations.empty(); }
  std::string to_string() const;
};

/// The decision at r_i may depend only on the calls visible at r_i.
NoSignallingReport audit_no_signalling(const PatternOutcomes& results,
                                       const SummoningTask& task);

/// Reads the decision tables off a full pattern map.
CausalStrategy induced_strategy(const PatternOutcomes& results, const SummoningTask& task);

/// Two call points, at most one call, and possibly one empty diamond. The
/// call point that precedes both returns holds the teleported state; a call
/// there is answered locally and broadcast as a stop, otherwise the state
/// goes to the other return point.
RunResult simulate_two_call_extended(const SummoningTask& task, const CallPattern& pattern);

}  // namespace summoning
