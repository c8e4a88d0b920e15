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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "summoning/geometry.hpp"

namespace summoning {

enum class TaskMode {
  SingleCallGuaranteed,  // at most one call
  UnrestrictedCalls,     // any subset, including none
  ExtendedGeometry,      // at most one call, one empty diamond allowed
};

/// "single", "multi" or "extended".
std::string_view mode_name(TaskMode mode);
std::optional<TaskMode> parse_mode(std::string_view name);

/// Start point plus N ordered (call, return) pairs. Pair indices are 1-based.
struct SummoningTask {
  std::size_t dim = 1;
  SpacetimePoint start;
  std::vector<CausalDiamond> pairs;
  TaskMode mode = TaskMode::UnrestrictedCalls;
  double tol = kDefaultTolerance;

  std::size_t size() const { return pairs.size(); }
  const CausalDiamond& pair(std::size_t i) const { return pairs.at(i - 1); }
  const SpacetimePoint& call(std::size_t i) const { return pair(i).call; }
  const SpacetimePoint& ret(std::size_t i) const { return pair(i).ret; }

  /// call(j) <= ret(i) under the task tolerance.
  bool reaches(std::size_t j, std::size_t i) const {
    return causal_leq(call(j), ret(i), tol);
  }

  friend bool operator==(const SummoningTask&, const SummoningTask&) = default;
};

/// Subset of call indices {1..N} stored as a bitmask; N is at most 64.
class CallPattern {
 public:
  static constexpr std::size_t kMaxIndex = 64;

  CallPattern() = default;
  explicit CallPattern(std::uint64_t mask) : mask_(mask) {}
  static CallPattern of(const std::vector<std::size_t>& indices);

  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  std::size_t size() const;
  bool contains(std::size_t i) const {
    return i >= 1 && i <= kMaxIndex && ((mask_ >> (i - 1)) & 1U);
  }
  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  friend auto operator<=>(const CallPattern&, const CallPattern&) = default;

 private:
  std::uint64_t mask_ = 0;
};

enum class ViolationCode {
  NoPairs,
  BadDimension,
  DimensionMismatch,
  NonFinite,
  BadTolerance,
  EmptyDiamond,
};

std::string_view violation_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::size_t index;  // 0 for the start point or the task itself
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Collects every violation; the mode decides whether empty diamonds count.
ValidationReport validate(const SummoningTask& task);
ValidationReport validate(const SummoningTask& task, TaskMode rules);

class InvalidTask : public std::invalid_argument {
 public:
  explicit InvalidTask(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Throws InvalidTask unless validate(task, rules) is clean.
void require_valid(const SummoningTask& task, TaskMode rules);

enum class ParseErrorCode { Syntax, MissingField, UnknownField, TypeMismatch, BadValue };

std::string_view parse_error_name(ParseErrorCode code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::string where, const std::string& what);
  ParseErrorCode code() const { return code_; }
  /// "line L, column C" for syntax errors, a field path otherwise.
  const std::string& where() const { return where_; }

 private:
  ParseErrorCode code_;
  std::string where_;
};

/// Parses the JSON task format. Structure is checked here; geometry is left
/// to validate().
SummoningTask parse_task(std::string_view text);

/// Canonical text: fixed field order, shortest round-trip numbers.
std::string serialize_task(const SummoningTask& task);

SummoningTask load_task_file(const std::string& path);

inline constexpr std::size_t kMaxEnumeratedPairs = 20;

/// All 2^N subsets in ascending mask order for UnrestrictedCalls;
/// {}, {1}, ..., {N} for the at-most-one-call modes.
std::vector<CallPattern> enumerate_patterns(const SummoningTask& task);
std::vector<CallPattern> enumerate_patterns(std::size_t n, TaskMode mode);

}  // namespace summoning
