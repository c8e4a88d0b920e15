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


#include "summoning/task.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "summoning/format.hpp"

namespace summoning {

using nlohmann::json;

std::string_view mode_name(TaskMode mode) {
  switch (mode) {
    case TaskMode::SingleCallGuaranteed: return "single";
    case TaskMode::UnrestrictedCalls: return "multi";
    case TaskMode::ExtendedGeometry: return "extended";
  }
  return "?";
}

std::optional<TaskMode> parse_mode(std::string_view name) {
  if (name == "single") return TaskMode::SingleCallGuaranteed;
  if (name == "multi") return TaskMode::UnrestrictedCalls;
  if (name == "extended") return TaskMode::ExtendedGeometry;
  return std::nullopt;
}

// --- CallPattern ------------------------------------------------------------

CallPattern CallPattern::of(const std::vector<std::size_t>& indices) {
  std::uint64_t mask = 0;
  for (std::size_t i : indices) {
    if (i < 1 || i > kMaxIndex) {
      throw std::out_of_range("call index " + std::to_string(i) +
                              " outside 1.." + std::to_string(kMaxIndex));
    }
    mask |= std::uint64_t{1} << (i - 1);
  }
  return CallPattern(mask);
}

std::size_t CallPattern::size() const {
  return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<std::size_t> CallPattern::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= kMaxIndex; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string CallPattern::to_string() const { return format_index_set(indices()); }

// --- validation -------------------------------------------------------------

std::string_view violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::NoPairs: return "NO_PAIRS";
    case ViolationCode::BadDimension: return "BAD_DIMENSION";
    case ViolationCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ViolationCode::NonFinite: return "NON_FINITE";
    case ViolationCode::BadTolerance: return "BAD_TOLERANCE";
    case ViolationCode::EmptyDiamond: return "EMPTY_DIAMOND";
  }
  return "?";
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << violation_name(v.code) << " at " << v.index << ": " << v.message << '\n';
  }
  return out.str();
}

ValidationReport validate(const SummoningTask& task) { return validate(task, task.mode); }

ValidationReport validate(const SummoningTask& task, TaskMode rules) {
  ValidationReport report;
  auto add = [&](ViolationCode code, std::size_t index, std::string msg) {
    report.violations.push_back({code, index, std::move(msg)});
  };

  if (task.dim < 1) add(ViolationCode::BadDimension, 0, "dimension must be at least 1");
  if (!(task.tol >= 0.0) || !std::isfinite(task.tol)) {
    add(ViolationCode::BadTolerance, 0, "tolerance must be finite and non-negative");
  }
  if (task.pairs.empty()) add(ViolationCode::NoPairs, 0, "task needs at least one pair");

  auto check_point = [&](const SpacetimePoint& p, std::size_t index,
                         const std::string& label) -> bool {
    bool good = true;
    if (p.dim() != task.dim) {
      add(ViolationCode::DimensionMismatch, index,
          label + " has " + std::to_string(p.dim()) + " spatial coordinates, expected " +
              std::to_string(task.dim));
      good = false;
    }
    if (!p.finite()) {
      add(ViolationCode::NonFinite, index, label + " has a non-finite coordinate");
      good = false;
    }
    return good;
  };

  check_point(task.start, 0, "start");
  const double tol = std::isfinite(task.tol) && task.tol >= 0 ? task.tol : 0.0;
  for (std::size_t i = 1; i <= task.size(); ++i) {
    const auto& d = task.pair(i);
    const bool call_ok = check_point(d.call, i, "call " + std::to_string(i));
    const bool ret_ok = check_point(d.ret, i, "return " + std::to_string(i));
    if (call_ok && ret_ok && rules != TaskMode::ExtendedGeometry && d.empty(tol)) {
      add(ViolationCode::EmptyDiamond, i,
          "return " + std::to_string(i) + " is not in the causal future of call " +
              std::to_string(i));
    }
  }
  return report;
}

InvalidTask::InvalidTask(ValidationReport report)
    : std::invalid_argument("invalid task:\n" + report.to_string()),
      report_(std::move(report)) {}

void require_valid(const SummoningTask& task, TaskMode rules) {
  auto report = validate(task, rules);
  if (!report.ok()) throw InvalidTask(std::move(report));
}

// --- parsing ----------------------------------------------------------------

std::string_view parse_error_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::Syntax: return "SYNTAX";
    case ParseErrorCode::MissingField: return "MISSING_FIELD";
    case ParseErrorCode::UnknownField: return "UNKNOWN_FIELD";
    case ParseErrorCode::TypeMismatch: return "TYPE_MISMATCH";
    case ParseErrorCode::BadValue: return "BAD_VALUE";
  }
  return "?";
}

ParseError::ParseError(ParseErrorCode code, std::string where, const std::string& what)
    : std::runtime_error(std::string(parse_error_name(code)) + " at " + where + ": " + what),
      code_(code),
      where_(std::move(where)) {}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void only_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                 const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ParseError(ParseErrorCode::UnknownField, path.empty() ? key : path + "." + key,
                       "unknown field \"" + key + "\"");
    }
  }
}

const json& field(const json& obj, const char* name, const std::string& path) {
  auto it = obj.find(name);
  const std::string where = path.empty() ? name : path + "." + name;
  if (it == obj.end()) {
    throw ParseError(ParseErrorCode::MissingField, where, "missing field");
  }
  return *it;
}

void expect(bool ok, const std::string& where, const char* what) {
  if (!ok) throw ParseError(ParseErrorCode::TypeMismatch, where, what);
}

double number(const json& v, const std::string& where) {
  expect(v.is_number(), where, "expected a number");
  return v.get<double>();
}

SpacetimePoint point(const json& v, const std::string& path) {
  expect(v.is_object(), path, "expected a point object {t, x}");
  only_fields(v, {"t", "x"}, path);
  SpacetimePoint p;
  p.t = number(field(v, "t", path), path + ".t");
  const json& xs = field(v, "x", path);
  expect(xs.is_array(), path + ".x", "expected an array of numbers");
  for (std::size_t k = 0; k < xs.size(); ++k) {
    p.x.push_back(number(xs[k], path + ".x[" + std::to_string(k) + "]"));
  }
  return p;
}

}  // namespace

SummoningTask parse_task(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Drop the library's own prefix and position; ours is more precise.
    std::string_view detail = e.what();
    if (const auto colon = detail.find(": "); colon != std::string_view::npos) {
      detail.remove_prefix(colon + 2);
    }
    throw ParseError(ParseErrorCode::Syntax, line_column(text, e.byte), std::string(detail));
  }

  expect(doc.is_object(), "$", "expected a top-level object");
  only_fields(doc, {"dimension", "mode", "tolerance", "start", "pairs"}, "");

  SummoningTask task;
  const json& dim = field(doc, "dimension", "");
  expect(dim.is_number_integer() && dim.get<long long>() >= 0, "dimension",
         "expected a non-negative integer");
  task.dim = dim.get<std::size_t>();

  const json& mode = field(doc, "mode", "");
  expect(mode.is_string(), "mode", "expected a string");
  auto parsed_mode = parse_mode(mode.get<std::string>());
  if (!parsed_mode) {
    throw ParseError(ParseErrorCode::BadValue, "mode",
                     "mode must be \"single\", \"multi\" or \"extended\"");
  }
  task.mode = *parsed_mode;

  if (auto it = doc.find("tolerance"); it != doc.end()) {
    task.tol = number(*it, "tolerance");
  }

  task.start = point(field(doc, "start", ""), "start");

  const json& pairs = field(doc, "pairs", "");
  expect(pairs.is_array(), "pairs", "expected an array");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string path = "pairs[" + std::to_string(k) + "]";
    const json& entry = pairs[k];
    expect(entry.is_object(), path, "expected a {call, return} object");
    only_fields(entry, {"call", "return"}, path);
    task.pairs.push_back({point(field(entry, "call", path), path + ".call"),
                          point(field(entry, "return", path), path + ".return")});
  }
  return task;
}

namespace {

std::string point_text(const SpacetimePoint& p) {
  std::string out = "{\"t\": " + format_number(p.t) + ", \"x\": [";
  for (std::size_t k = 0; k < p.x.size(); ++k) {
    if (k) out += ", ";
    out += format_number(p.x[k]);
  }
  return out + "]}";
}

}  // namespace

std::string serialize_task(const SummoningTask& task) {
  std::string out = "{\n";
  out += "  \"dimension\": " + std::to_string(task.dim) + ",\n";
  out += "  \"mode\": \"" + std::string(mode_name(task.mode)) + "\",\n";
  out += "  \"tolerance\": " + format_number(task.tol) + ",\n";
  out += "  \"start\": " + point_text(task.start) + ",\n";
  out += "  \"pairs\": [";
  for (std::size_t k = 0; k < task.pairs.size(); ++k) {
    out += k ? ",\n" : "\n";
    out += "    {\"call\": " + point_text(task.pairs[k].call) +
           ", \"return\": " + point_text(task.pairs[k].ret) + "}";
  }
  out += task.pairs.empty() ? "]\n" : "\n  ]\n";
  return out + "}\n";
}

SummoningTask load_task_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open task file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_task(buf.str());
}

// --- patterns ---------------------------------------------------------------

std::vector<CallPattern> enumerate_patterns(const SummoningTask& task) {
  return enumerate_patterns(task.size(), task.mode);
}

std::vector<CallPattern> enumerate_patterns(std::size_t n, TaskMode mode) {
  if (n > kMaxEnumeratedPairs) {
    throw std::length_error("pattern enumeration is limited to " +
                            std::to_string(kMaxEnumeratedPairs) + " pairs, task has " +
                            std::to_string(n));
  }
  std::vector<CallPattern> out;
  if (mode == TaskMode::UnrestrictedCalls) {
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.emplace_back(m);
  } else {
    out.emplace_back();
    for (std::size_t i = 1; i <= n; ++i) out.push_back(CallPattern::of({i}));
  }
  return out;
}

}  // namespace summoning
