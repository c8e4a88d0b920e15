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


#include "summoning/protocol.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <tuple>

#include "protocol_internal.hpp"
#include "summoning/feasibility.hpp"
#include "summoning/format.hpp"

namespace summoning {

void EntangledPair::consume() {
  if (consumed) {
    throw ProtocolViolation("entangled pair " + std::to_string(id) + " consumed twice");
  }
  consumed = true;
}

std::string ClassicalBroadcast::label() const {
  if (const auto* td = std::get_if<TeleportData>(&payload)) {
    return "TD" + std::to_string(td->hop);
  }
  return "STOP" + std::to_string(std::get<CallReceivedStop>(payload).index);
}

// --- token ------------------------------------------------------------------

QuantumToken::QuantumToken(std::size_t lineage, Custody initial)
    : lineage_(lineage), custody_(std::move(initial)), history_{custody_} {}

void QuantumToken::move(Custody next) {
  if (returned()) {
    throw ProtocolViolation("state " + std::to_string(lineage_) +
                            " moved after it was handed over");
  }
  custody_ = std::move(next);
  history_.push_back(custody_);
}

void QuantumToken::hand_over(std::size_t index, const SpacetimePoint& at, double tol) {
  if (returned()) {
    throw ProtocolViolation("double custody: state already handed over at r_" +
                            std::to_string(std::get<Returned>(custody_).index) +
                            ", second hand-over at r_" + std::to_string(index));
  }
  const auto* transit = std::get_if<InTransitTo>(&custody_);
  if (transit == nullptr || transit->target.dim() != at.dim() ||
      !causal_leq(transit->target, at, tol) || !causal_leq(at, transit->target, tol)) {
    throw ProtocolViolation("hand-over at r_" + std::to_string(index) +
                            " while the state is elsewhere: " + summoning::to_string(custody_));
  }
  move(Returned{index});
}

void QuantumToken::finish() {
  if (!returned()) move(Unreturned{});
}

std::string to_string(const QuantumToken::Custody& c) {
  struct Printer {
    std::string operator()(const QuantumToken::AtLocation& a) const {
      return "at (" + format_coords(a.x) + ") since t=" + format_number(a.since);
    }
    std::string operator()(const QuantumToken::InTransitTo& a) const {
      return "in transit to " + summoning::to_string(a.target);
    }
    std::string operator()(const QuantumToken::Returned& a) const {
      return "returned at r_" + std::to_string(a.index);
    }
    std::string operator()(const QuantumToken::Unreturned&) const { return "unreturned"; }
  };
  return std::visit(Printer{}, c);
}

// --- log --------------------------------------------------------------------

std::string EventLog::render() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << "t=" << format_number(e.where.t) << " @(" << format_coords(e.where.x) << ") "
        << e.action << " [";
    bool first = true;
    for (const auto& b : e.cites) {
      out << (first ? "" : " ") << b.label();
      first = false;
    }
    if (e.quantum) {
      out << (first ? "" : " ") << "Q:c" << e.quantum->from_index;
    }
    out << "]\n";
  }
  return out.str();
}

bool log_is_causal(const EventLog& log, double tol) {
  for (const auto& e : log.entries) {
    for (const auto& b : e.cites) {
      if (!b.available_at(e.where, tol)) return false;
    }
    if (e.quantum && !causal_leq(e.quantum->from, e.where, tol)) return false;
  }
  return true;
}

std::string Outcome::to_string() const {
  if (returned()) return "ReturnedAt " + std::to_string(index);
  if (reconstructed_at) return "NoReturn (ReconstructedAt r_" + std::to_string(*reconstructed_at) + ")";
  return "NoReturn";
}

// --- plan -------------------------------------------------------------------

ProtocolPlan plan_chain_protocol(const SummoningTask& task) {
  ProtocolPlan plan;
  plan.task = task;
  plan.ordering = construct_ordering(task);
  const SpacetimePoint* previous = &task.start;
  for (std::size_t k = 1; k <= task.size(); ++k) {
    const auto& next = task.call(plan.ordering[k - 1]);
    plan.pairs.push_back({k, previous->x, next.x, false});
    previous = &next;
  }
  return plan;
}

namespace {

struct Event {
  enum class Kind { Start, Call, Return };
  double t;
  int priority;  // start, then call decisions, then return points
  std::size_t seq;
  Kind kind;
  std::size_t position;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.t, a.priority, a.seq) > std::tie(b.t, b.priority, b.seq);
  }
};

int priority_of(Event::Kind kind) {
  switch (kind) {
    case Event::Kind::Start: return 0;
    case Event::Kind::Call: return 1;
    case Event::Kind::Return: return 2;
  }
  return 3;
}

class EventQueue {
 public:
  void push(double t, Event::Kind kind, std::size_t position = 0) {
    queue_.push({t, priority_of(kind), seq_++, kind, position});
  }
  bool empty() const { return queue_.empty(); }
  Event pop() {
    Event e = queue_.top();
    queue_.pop();
    return e;
  }

 private:
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::size_t seq_ = 0;
};

bool same_place(const QuantumToken::Custody& a, const QuantumToken::Custody& b) {
  if (a.index() != b.index()) return false;
  if (const auto* at = std::get_if<QuantumToken::AtLocation>(&a)) {
    return at->x == std::get<QuantumToken::AtLocation>(b).x;
  }
  if (const auto* transit = std::get_if<QuantumToken::InTransitTo>(&a)) {
    return transit->target == std::get<QuantumToken::InTransitTo>(b).target;
  }
  return true;
}

/// State of the half that an agent received through the chain.
enum class Half { WithAgent, InTransit, Teleported, Delivered };

class ChainRun {
 public:
  ChainRun(const ProtocolPlan& plan, const CallPattern& pattern)
      : plan_(plan),
        task_(plan.task),
        pattern_(pattern),
        n_(plan.task.size()),
        half_(n_ + 1, Half::WithAgent),
        transfer_(n_ + 1),
        token_(1, QuantumToken::AtLocation{plan.task.start.x, plan.task.start.t}) {
    result_.pairs = plan.pairs;
  }

  RunResult run() {
    queue_.push(task_.start.t, Event::Kind::Start);
    for (std::size_t pos = 1; pos <= n_; ++pos) {
      queue_.push(call_at(pos).t, Event::Kind::Call, pos);
    }
    while (!queue_.empty()) {
      const Event e = queue_.pop();
      switch (e.kind) {
        case Event::Kind::Start: on_start(); break;
        case Event::Kind::Call: on_call(e.position); break;
        case Event::Kind::Return: on_return(e.position); break;
      }
    }
    token_.finish();
    result_.custody = token_.history();

    if (token_.returned()) {
      result_.outcome = Outcome::returned_at(std::get<QuantumToken::Returned>(token_.custody()).index);
    } else {
      result_.outcome = Outcome::no_return(reconstructed_at_);
    }
    check_contract();
    return std::move(result_);
  }

 private:
  std::size_t index_at(std::size_t pos) const { return plan_.ordering[pos - 1]; }
  const SpacetimePoint& call_at(std::size_t pos) const { return task_.call(index_at(pos)); }
  const SpacetimePoint& ret_at(std::size_t pos) const { return task_.ret(index_at(pos)); }

  ClassicalBroadcast emit(const SpacetimePoint& origin,
                          std::variant<TeleportData, CallReceivedStop> payload) {
    result_.broadcasts.push_back({origin, payload});
    return result_.broadcasts.back();
  }

  void log(const SpacetimePoint& where, std::string action, std::vector<ClassicalBroadcast> cites,
           std::optional<QuantumTransfer> quantum = std::nullopt) {
    result_.log.entries.push_back({where, std::move(action), std::move(cites), std::move(quantum)});
  }

  // Where the state currently is, following the chain of teleported halves.
  QuantumToken::Custody locate(double now) const {
    if (!injected_) return QuantumToken::AtLocation{task_.start.x, task_.start.t};
    for (std::size_t pos = 1; pos <= n_; ++pos) {
      switch (half_[pos]) {
        case Half::WithAgent: return QuantumToken::AtLocation{call_at(pos).x, now};
        case Half::InTransit: return QuantumToken::InTransitTo{ret_at(pos)};
        case Half::Delivered: return QuantumToken::AtLocation{ret_at(pos).x, now};
        case Half::Teleported: break;
      }
    }
    throw ProtocolViolation("state teleported past the end of the chain");
  }

  void refresh(double now) {
    if (token_.returned()) return;
    auto where = locate(now);
    if (!same_place(where, token_.custody())) token_.move(std::move(where));
  }

  std::string call_label(std::size_t pos) const { return "c" + std::to_string(index_at(pos)); }

  void on_start() {
    result_.pairs[0].consume();
    injected_ = true;
    emit(task_.start, TeleportData{0});
    log(task_.start, "TELEPORT s->" + call_label(1) + " pair=1", {});
    refresh(task_.start.t);
  }

  void send_to_return(std::size_t pos) {
    half_[pos] = Half::InTransit;
    transfer_[pos] = QuantumTransfer{call_at(pos), ret_at(pos), pos, index_at(pos)};
    queue_.push(ret_at(pos).t, Event::Kind::Return, pos);
  }

  void on_call(std::size_t pos) {
    const std::size_t i = index_at(pos);
    const auto& here = call_at(pos);
    if (pattern_.contains(i)) {
      emit(here, CallReceivedStop{i});
      send_to_return(pos);
      log(here, "CALL " + std::to_string(i) + " STOP+SEND pair=" + std::to_string(pos) + " ->r" +
                    std::to_string(i),
          {});
    } else if (pos < n_) {
      result_.pairs[pos].consume();
      half_[pos] = Half::Teleported;
      emit(here, TeleportData{pos});
      log(here, "TELEPORT " + call_label(pos) + "->" + call_label(pos + 1) +
                    " pair=" + std::to_string(pos + 1),
          {});
    } else {
      send_to_return(pos);
      log(here, "NOCALL SEND pair=" + std::to_string(pos) + " ->r" + std::to_string(i), {});
    }
    refresh(here.t);
  }

  void on_return(std::size_t pos) {
    const std::size_t i = index_at(pos);
    const auto& here = ret_at(pos);
    const auto& quantum = *transfer_[pos];
    if (!causal_leq(quantum.from, here, task_.tol)) {
      throw ProtocolViolation("half of pair " + std::to_string(pos) + " cannot reach r_" +
                              std::to_string(i));
    }

    std::vector<ClassicalBroadcast> earlier_stops;
    std::vector<std::optional<ClassicalBroadcast>> teleports(pos);
    std::optional<ClassicalBroadcast> own_stop;
    for (const auto& b : result_.broadcasts) {
      if (!b.available_at(here, task_.tol)) continue;
      if (const auto* td = std::get_if<TeleportData>(&b.payload)) {
        if (td->hop < pos) teleports[td->hop] = b;
      } else {
        const std::size_t called = std::get<CallReceivedStop>(b.payload).index;
        const auto at = std::find(plan_.ordering.begin(), plan_.ordering.end(), called);
        const auto called_pos = static_cast<std::size_t>(at - plan_.ordering.begin()) + 1;
        if (called_pos < pos) earlier_stops.push_back(b);
        if (called == i) own_stop = b;
      }
    }

    half_[pos] = Half::Delivered;
    if (!earlier_stops.empty()) {
      log(here, "SUPPRESS r" + std::to_string(i), earlier_stops, quantum);
      return;
    }

    std::vector<ClassicalBroadcast> cites;
    for (std::size_t hop = 0; hop < pos; ++hop) {
      if (!teleports[hop]) {
        throw ProtocolViolation("reconstruction at r_" + std::to_string(i) +
                                " without teleport data from hop " + std::to_string(hop));
      }
      cites.push_back(*teleports[hop]);
    }
    if (own_stop) {
      cites.push_back(*own_stop);
      token_.hand_over(i, here, task_.tol);
      log(here, "RETURN " + std::to_string(i), cites, quantum);
    } else {
      refresh(here.t);
      reconstructed_at_ = i;
      log(here, "RECONSTRUCT r" + std::to_string(i) + " no-return", cites, quantum);
    }
  }

  void check_contract() const {
    if (pattern_.empty()) {
      if (result_.outcome.returned()) {
        throw ProtocolViolation("returned a state although no call was made");
      }
      return;
    }
    std::size_t first_called = 0;
    for (std::size_t pos = 1; pos <= n_ && first_called == 0; ++pos) {
      if (pattern_.contains(index_at(pos))) first_called = index_at(pos);
    }
    if (result_.outcome != Outcome::returned_at(first_called)) {
      throw ProtocolViolation("calls " + pattern_.to_string() + " ended with " +
                              result_.outcome.to_string() + ", expected ReturnedAt " +
                              std::to_string(first_called));
    }
  }

  const ProtocolPlan& plan_;
  const SummoningTask& task_;
  CallPattern pattern_;
  std::size_t n_;
  std::vector<Half> half_;
  std::vector<std::optional<QuantumTransfer>> transfer_;
  QuantumToken token_;
  bool injected_ = false;
  std::optional<std::size_t> reconstructed_at_;
  EventQueue queue_;
  RunResult result_;
};

}  // namespace

RunResult simulate(const ProtocolPlan& plan, const CallPattern& pattern) {
  if (plan.ordering.size() != plan.task.size() || plan.pairs.size() != plan.task.size()) {
    throw std::invalid_argument("plan does not match its task");
  }
  for (std::size_t i : pattern.indices()) {
    if (i > plan.task.size()) {
      throw std::out_of_range("call index " + std::to_string(i) + " outside 1.." +
                              std::to_string(plan.task.size()));
    }
  }
  return ChainRun(plan, pattern).run();
}

namespace detail {

Outcome run_and_check(const ProtocolPlan& plan, const CallPattern& pattern) {
  const RunResult run = simulate(plan, pattern);
  if (!log_is_causal(run.log, plan.task.tol)) {
    throw ProtocolViolation("acausal event log for calls " + pattern.to_string());
  }
  const bool should_return = !pattern.empty();
  if (run.outcome.returned() != should_return ||
      (should_return && !pattern.contains(run.outcome.index))) {
    throw ProtocolViolation("calls " + pattern.to_string() + " ended with " +
                            run.outcome.to_string());
  }
  return run.outcome;
}

void require_pattern_range(const ProtocolPlan& plan) {
  if (plan.task.size() > kMaxBruteforcePairs) {
    throw std::length_error("pattern sweep is limited to " +
                            std::to_string(kMaxBruteforcePairs) + " pairs");
  }
}

PatternOutcomes collect(const std::vector<Outcome>& by_mask) {
  PatternOutcomes out;
  for (std::uint64_t q = 0; q < by_mask.size(); ++q) out.emplace(CallPattern(q), by_mask[q]);
  return out;
}

}  // namespace detail

PatternOutcomes simulate_all_patterns_serial(const ProtocolPlan& plan) {
  detail::require_pattern_range(plan);
  std::vector<Outcome> by_mask(std::size_t{1} << plan.task.size());
  for (std::uint64_t q = 0; q < by_mask.size(); ++q) {
    by_mask[q] = detail::run_and_check(plan, CallPattern(q));
  }
  return detail::collect(by_mask);
}

// --- audit ------------------------------------------------------------------

std::string NoSignallingReport::to_string() const {
  if (pass()) return "audit: PASS\n";
  std::ostringstream out;
  out << "audit: FAIL\n";
  for (const auto& v : violations) {
    out << "  r_" << v.index << " decides differently on " << v.first.to_string() << " and "
        << v.second.to_string() << " with the same visible calls\n";
  }
  return out.str();
}

NoSignallingReport audit_no_signalling(const PatternOutcomes& results,
                                       const SummoningTask& task) {
  NoSignallingReport report;
  for (std::size_t i = 1; i <= task.size(); ++i) {
    std::uint64_t visible = 0;
    for (std::size_t j : visible_set(task, i)) visible |= std::uint64_t{1} << (j - 1);

    std::map<std::uint64_t, std::pair<bool, CallPattern>> seen;
    for (const auto& [pattern, outcome] : results) {
      const bool returns = outcome.returned() && outcome.index == i;
      auto [it, inserted] = seen.try_emplace(pattern.mask() & visible, returns, pattern);
      if (!inserted && it->second.first != returns) {
        report.violations.push_back({i, it->second.second, pattern});
      }
    }
  }
  return report;
}

CausalStrategy induced_strategy(const PatternOutcomes& results, const SummoningTask& task) {
  CausalStrategy s;
  for (std::size_t i = 1; i <= task.size(); ++i) {
    CausalStrategy::Table table;
    table.visible = visible_set(task, i);
    table.returns.assign(std::size_t{1} << table.visible.size(), false);
    for (std::size_t m = 0; m < table.returns.size(); ++m) {
      std::uint64_t calls = 0;
      for (std::size_t b = 0; b < table.visible.size(); ++b) {
        if ((m >> b) & 1U) calls |= std::uint64_t{1} << (table.visible[b] - 1);
      }
      const auto it = results.find(CallPattern(calls));
      if (it == results.end()) {
        throw std::invalid_argument("pattern map lacks " + CallPattern(calls).to_string());
      }
      table.returns[m] = it->second.returned() && it->second.index == i;
    }
    s.tables.push_back(std::move(table));
  }
  return s;
}

// --- two call points, extended geometry -------------------------------------

RunResult simulate_two_call_extended(const SummoningTask& task, const CallPattern& pattern) {
  if (task.size() != 2) throw std::invalid_argument("two-call protocol needs exactly two pairs");
  const Verdict verdict = check_extended(task);
  if (!verdict.feasible) {
    throw std::domain_error("extended task is infeasible: " + to_string(*verdict.witness));
  }
  if (pattern.size() > 1 || pattern.mask() > 0b11) {
    throw std::invalid_argument("two-call protocol takes at most one call among {1,2}");
  }

  // The holder's call point precedes both returns; prefer pair 1.
  const std::size_t holder = task.reaches(1, 1) && task.reaches(1, 2) ? 1 : 2;
  const std::size_t other = 3 - holder;
  const auto& s = task.start;
  const auto& c = task.call(holder);
  const auto& r_holder = task.ret(holder);
  const auto& r_other = task.ret(other);

  RunResult result;
  result.pairs.push_back({1, s.x, c.x, false});
  QuantumToken token(1, QuantumToken::AtLocation{s.x, s.t});

  EventQueue queue;
  queue.push(s.t, Event::Kind::Start);
  queue.push(c.t, Event::Kind::Call, holder);
  queue.push(r_other.t, Event::Kind::Return, other);
  const bool holder_called = pattern.contains(holder);
  if (holder_called) queue.push(r_holder.t, Event::Kind::Return, holder);

  std::optional<QuantumTransfer> transfer;
  std::optional<std::size_t> reconstructed_at;

  auto visible_at = [&](const SpacetimePoint& q) {
    std::vector<ClassicalBroadcast> out;
    for (const auto& b : result.broadcasts) {
      if (b.available_at(q, task.tol)) out.push_back(b);
    }
    return out;
  };

  while (!queue.empty()) {
    const Event e = queue.pop();
    switch (e.kind) {
      case Event::Kind::Start: {
        result.pairs[0].consume();
        result.broadcasts.push_back({s, TeleportData{0}});
        result.log.entries.push_back({s, "TELEPORT s->c" + std::to_string(holder) + " pair=1", {}, {}});
        token.move(QuantumToken::AtLocation{c.x, s.t});
        break;
      }
      case Event::Kind::Call: {
        const auto& target = holder_called ? r_holder : r_other;
        transfer = QuantumTransfer{c, target, 1, holder};
        if (holder_called) {
          result.broadcasts.push_back({c, CallReceivedStop{holder}});
          result.log.entries.push_back({c, "CALL " + std::to_string(holder) + " STOP+SEND pair=1 ->r" +
                                               std::to_string(holder), {}, {}});
        } else {
          result.log.entries.push_back(
              {c, "NOCALL SEND pair=1 ->r" + std::to_string(other), {}, {}});
        }
        token.move(QuantumToken::InTransitTo{target});
        break;
      }
      case Event::Kind::Return: {
        const auto& here = task.ret(e.position);
        const auto seen = visible_at(here);
        std::vector<ClassicalBroadcast> teleport, stops;
        for (const auto& b : seen) {
          (std::holds_alternative<TeleportData>(b.payload) ? teleport : stops).push_back(b);
        }
        if (e.position == other && !stops.empty()) {
          result.log.entries.push_back({here, "SUPPRESS r" + std::to_string(other), stops, {}});
          break;
        }
        if (!transfer || transfer->to != here || !causal_leq(transfer->from, here, task.tol)) {
          throw ProtocolViolation("no quantum half reaches r_" + std::to_string(e.position));
        }
        if (teleport.empty()) {
          throw ProtocolViolation("reconstruction at r_" + std::to_string(e.position) +
                                  " without teleport data");
        }
        if (e.position == holder) {
          teleport.insert(teleport.end(), stops.begin(), stops.end());
          token.hand_over(holder, here, task.tol);
          result.log.entries.push_back({here, "RETURN " + std::to_string(holder), teleport, transfer});
        } else if (pattern.contains(other)) {
          // The call at c_other may be invisible here; the state is handed
          // over either way and answers the call when there is one.
          token.hand_over(other, here, task.tol);
          result.log.entries.push_back({here, "DELIVER r" + std::to_string(other), teleport, transfer});
        } else {
          token.move(QuantumToken::AtLocation{here.x, here.t});
          reconstructed_at = other;
          result.log.entries.push_back({here, "DELIVER r" + std::to_string(other), teleport, transfer});
        }
        break;
      }
    }
  }

  token.finish();
  result.custody = token.history();
  result.outcome = token.returned()
                       ? Outcome::returned_at(std::get<QuantumToken::Returned>(token.custody()).index)
                       : Outcome::no_return(reconstructed_at);
  return result;
}

}  // namespace summoning
