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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "summoning/task.hpp"

namespace summoning {

/// {j : c_j <= r_i}, ascending, 1-based.
std::vector<std::size_t> visible_set(const SummoningTask& task, std::size_t i);

enum class Decision : std::uint8_t { Pass, Return };

/// One decision table per return point, keyed by the calls visible there.
/// A table cannot see invisible calls, so every strategy is no-signalling.
struct CausalStrategy {
  struct Table {
    std::vector<std::size_t> visible;
    /// returns[m] for the local subset m; bit b of m stands for visible[b].
    std::vector<bool> returns;
  };
  std::vector<Table> tables;  // tables[i - 1] belongs to r_i

  Decision decide(std::size_t i, const CallPattern& calls) const;
  std::string to_string() const;
};

class MalformedStrategy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every nonempty call set gets exactly one Return, at a called index, and
/// the empty call set gets none. Throws MalformedStrategy on shape errors.
bool strategy_valid(const CausalStrategy& strategy, const SummoningTask& task);

inline constexpr std::uint64_t kDefaultStrategyCap = std::uint64_t{1} << 24;
inline constexpr std::size_t kMaxOraclePairs = 16;

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// All deterministic causal strategies of a task, addressed by index.
///
/// Index bits are the concatenated table bits, r_1's table in the lowest
/// bits. Return points outside the start point's future can never hold the
/// state, so their tables are pinned to Pass and contribute no bits.
class StrategySpace {
 public:
  StrategySpace(const SummoningTask& task, std::uint64_t cap = kDefaultStrategyCap);

  std::uint64_t size() const { return std::uint64_t{1} << total_bits_; }
  std::size_t total_bits() const { return total_bits_; }
  std::size_t pairs() const { return n_; }

  CausalStrategy at(std::uint64_t index) const;

  /// Same answer as strategy_valid(at(index), task), without materializing.
  bool valid_at(std::uint64_t index) const;

 private:
  std::size_t n_ = 0;
  std::size_t total_bits_ = 0;
  std::vector<std::vector<std::size_t>> visible_;
  std::vector<bool> pinned_;
  std::vector<std::size_t> offset_;
  // bit_[q * n_ + (i - 1)]: index bit holding f_i(q), or -1 when pinned.
  std::vector<std::int32_t> bit_;
};

/// The search space of a task, checked against the cap.
StrategySpace enumerate_strategies(const SummoningTask& task,
                                   std::uint64_t cap = kDefaultStrategyCap);

struct SearchResult {
  std::optional<CausalStrategy> strategy;
  std::optional<std::uint64_t> index;  // position in enumeration order
  std::uint64_t examined = 0;          // strategies up to and including the hit
  std::uint64_t space = 0;
};

/// First valid strategy in enumeration order, single-threaded reference.
SearchResult exhaustive_search_serial(const SummoningTask& task,
                                      std::uint64_t cap = kDefaultStrategyCap);

/// OpenMP version. Scans fixed-size blocks in order and keeps the minimum
/// hit per block, so the answer matches the serial scan for every thread
/// count and block size.
SearchResult exhaustive_search(const SummoningTask& task,
                               std::uint64_t cap = kDefaultStrategyCap,
                               std::uint64_t block = std::uint64_t{1} << 14);

/// Counting argument against a stuck set M.
struct ParityCertificate {
  struct Entry {
    std::size_t i;
    std::size_t partner;              // smallest j in M with c_j not <= r_i
    std::vector<std::size_t> observed;  // distinct Q_i seen while enumerating
    bool even = false;
  };
  std::vector<std::size_t> subset;
  std::vector<Entry> entries;
  /// Q <-> Q xor {partner} preserves the visible calls at r_i for all Q in M.
  bool pairing_verified = false;
  /// Strategies on M (with no return on the empty call set) that were counted.
  std::uint64_t strategies_checked = 0;
  std::uint64_t required_total = 0;  // 2^|M| - 1
  bool contradiction = false;

  std::string to_string() const;
};

/// Throws std::invalid_argument when some i in M dominates M. The counting
/// pass over concrete strategies is skipped when their number exceeds cap.
ParityCertificate parity_certificate(const SummoningTask& task,
                                     const std::vector<std::size_t>& subset,
                                     std::uint64_t cap = kDefaultStrategyCap);

}  // namespace summoning
