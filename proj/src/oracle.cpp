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


#include "summoning/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "summoning/format.hpp"

namespace summoning {

std::vector<std::size_t> visible_set(const SummoningTask& task, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= task.size(); ++j) {
    if (task.reaches(j, i)) out.push_back(j);
  }
  return out;
}

namespace {

std::size_t local_mask(const std::vector<std::size_t>& visible, std::uint64_t calls) {
  std::size_t m = 0;
  for (std::size_t b = 0; b < visible.size(); ++b) {
    if ((calls >> (visible[b] - 1)) & 1U) m |= std::size_t{1} << b;
  }
  return m;
}

}  // namespace

Decision CausalStrategy::decide(std::size_t i, const CallPattern& calls) const {
  const auto& table = tables.at(i - 1);
  const std::size_t m = local_mask(table.visible, calls.mask());
  if (m >= table.returns.size()) throw MalformedStrategy("decision table too small");
  return table.returns[m] ? Decision::Return : Decision::Pass;
}

std::string CausalStrategy::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 1; i <= tables.size(); ++i) {
    const auto& table = tables[i - 1];
    out << "r_" << i << " sees " << format_index_set(table.visible) << ": return on";
    bool any = false;
    for (std::size_t m = 0; m < table.returns.size(); ++m) {
      if (!table.returns[m]) continue;
      std::vector<std::size_t> called;
      for (std::size_t b = 0; b < table.visible.size(); ++b) {
        if ((m >> b) & 1U) called.push_back(table.visible[b]);
      }
      out << ' ' << format_index_set(called);
      any = true;
    }
    if (!any) out << " nothing";
    out << '\n';
  }
  return out.str();
}

bool strategy_valid(const CausalStrategy& strategy, const SummoningTask& task) {
  const std::size_t n = task.size();
  if (strategy.tables.size() != n) {
    throw MalformedStrategy("strategy has " + std::to_string(strategy.tables.size()) +
                            " tables for " + std::to_string(n) + " pairs");
  }
  if (n > kMaxEnumeratedPairs) throw std::length_error("too many pairs to check a strategy");
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& table = strategy.tables[i - 1];
    if (table.visible != visible_set(task, i)) {
      throw MalformedStrategy("table " + std::to_string(i) + " is keyed by the wrong calls");
    }
    if (table.returns.size() != (std::size_t{1} << table.visible.size())) {
      throw MalformedStrategy("table " + std::to_string(i) + " has the wrong size");
    }
  }

  for (std::uint64_t q = 0; q < (std::uint64_t{1} << n); ++q) {
    const CallPattern calls(q);
    std::size_t returns = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (strategy.decide(i, calls) == Decision::Return) {
        if (!calls.contains(i)) return false;
        ++returns;
      }
    }
    if (returns != (q == 0 ? 0U : 1U)) return false;
  }
  return true;
}

// --- strategy space ---------------------------------------------------------

StrategySpace::StrategySpace(const SummoningTask& task, std::uint64_t cap) : n_(task.size()) {
  if (n_ > kMaxOraclePairs) {
    throw CapExceeded("strategy search is limited to " + std::to_string(kMaxOraclePairs) +
                      " pairs, task has " + std::to_string(n_));
  }
  offset_.assign(n_, 0);
  for (std::size_t i = 1; i <= n_; ++i) {
    visible_.push_back(visible_set(task, i));
    const bool reachable = causal_leq(task.start, task.ret(i), task.tol);
    pinned_.push_back(!reachable);
    offset_[i - 1] = total_bits_;
    if (reachable) {
      if (visible_.back().size() >= 6) total_bits_ = 64;  // 2^64 table bits alone
      else total_bits_ += std::size_t{1} << visible_.back().size();
    }
    if (total_bits_ >= 63 || (std::uint64_t{1} << total_bits_) > cap) {
      throw CapExceeded("strategy space exceeds cap " + std::to_string(cap));
    }
  }

  const std::uint64_t patterns = std::uint64_t{1} << n_;
  bit_.assign(patterns * n_, -1);
  for (std::uint64_t q = 0; q < patterns; ++q) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (pinned_[i]) continue;
      bit_[q * n_ + i] = static_cast<std::int32_t>(offset_[i] + local_mask(visible_[i], q));
    }
  }
}

CausalStrategy StrategySpace::at(std::uint64_t index) const {
  CausalStrategy s;
  for (std::size_t i = 0; i < n_; ++i) {
    CausalStrategy::Table table;
    table.visible = visible_[i];
    table.returns.assign(std::size_t{1} << visible_[i].size(), false);
    if (!pinned_[i]) {
      for (std::size_t m = 0; m < table.returns.size(); ++m) {
        table.returns[m] = (index >> (offset_[i] + m)) & 1U;
      }
    }
    s.tables.push_back(std::move(table));
  }
  return s;
}

bool StrategySpace::valid_at(std::uint64_t index) const {
  const std::uint64_t patterns = std::uint64_t{1} << n_;
  for (std::uint64_t q = 0; q < patterns; ++q) {
    const std::int32_t* bits = &bit_[q * n_];
    std::size_t returns = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (bits[i] < 0 || !((index >> bits[i]) & 1U)) continue;
      if (!((q >> i) & 1U) || ++returns > 1) return false;
    }
    if (q != 0 && returns == 0) return false;
  }
  return true;
}

StrategySpace enumerate_strategies(const SummoningTask& task, std::uint64_t cap) {
  return StrategySpace(task, cap);
}

SearchResult exhaustive_search_serial(const SummoningTask& task, std::uint64_t cap) {
  const StrategySpace space(task, cap);
  SearchResult result;
  result.space = space.size();
  for (std::uint64_t g = 0; g < space.size(); ++g) {
    if (space.valid_at(g)) {
      result.index = g;
      result.examined = g + 1;
      result.strategy = space.at(g);
      return result;
    }
  }
  result.examined = space.size();
  return result;
}

// --- parity certificate -----------------------------------------------------

ParityCertificate parity_certificate(const SummoningTask& task,
                                     const std::vector<std::size_t>& subset,
                                     std::uint64_t cap) {
  std::vector<std::size_t> m_set = subset;
  std::sort(m_set.begin(), m_set.end());
  m_set.erase(std::unique(m_set.begin(), m_set.end()), m_set.end());
  if (m_set.empty()) throw std::invalid_argument("witness set is empty");
  if (m_set.front() < 1 || m_set.back() > task.size()) {
    throw std::invalid_argument("witness set has an index outside 1.." +
                                std::to_string(task.size()));
  }
  if (m_set.size() > kMaxOraclePairs) throw CapExceeded("witness set too large");

  ParityCertificate cert;
  cert.subset = m_set;
  const std::size_t size = m_set.size();
  cert.required_total = (std::uint64_t{1} << size) - 1;

  // Visibility inside M, in local bit positions.
  std::vector<std::uint64_t> seen(size, 0);
  for (std::size_t a = 0; a < size; ++a) {
    const std::size_t i = m_set[a];
    std::optional<std::size_t> partner;
    for (std::size_t b = 0; b < size; ++b) {
      if (task.reaches(m_set[b], i)) seen[a] |= std::uint64_t{1} << b;
      else if (!partner) partner = b;
    }
    if (!partner) {
      throw std::invalid_argument("not a witness set: r_" + std::to_string(i) +
                                  " is in the future of every call in " +
                                  format_index_set(m_set));
    }
    cert.entries.push_back({i, m_set[*partner], {}, true});
  }

  const std::uint64_t patterns = std::uint64_t{1} << size;
  cert.pairing_verified = true;
  for (std::size_t a = 0; a < size; ++a) {
    const auto it = std::find(m_set.begin(), m_set.end(), cert.entries[a].partner);
    const std::uint64_t flip = std::uint64_t{1} << (it - m_set.begin());
    for (std::uint64_t q = 0; q < patterns; ++q) {
      const std::uint64_t twin = q ^ flip;
      if ((q & seen[a]) != (twin & seen[a]) || twin == q) cert.pairing_verified = false;
    }
  }

  // Tables on the calls visible inside M with f_i(empty) pinned to Pass.
  std::vector<std::size_t> offset(size), width(size);
  std::size_t total_bits = 0;
  for (std::size_t a = 0; a < size; ++a) {
    const auto k = static_cast<std::size_t>(std::popcount(seen[a]));
    width[a] = (std::size_t{1} << k) - 1;
    offset[a] = total_bits;
    total_bits += width[a];
  }
  if (total_bits < 63 && (std::uint64_t{1} << total_bits) <= cap) {
    std::vector<std::set<std::uint64_t>> observed(size);
    const std::uint64_t strategies = std::uint64_t{1} << total_bits;
    for (std::uint64_t g = 0; g < strategies; ++g) {
      for (std::size_t a = 0; a < size; ++a) {
        std::uint64_t count = 0;
        for (std::uint64_t q = 0; q < patterns; ++q) {
          // Compress q & seen[a] to a dense local index.
          std::size_t local = 0, bit = 0;
          for (std::size_t b = 0; b < size; ++b) {
            if (!((seen[a] >> b) & 1U)) continue;
            if ((q >> b) & 1U) local |= std::size_t{1} << bit;
            ++bit;
          }
          if (local != 0 && ((g >> (offset[a] + local - 1)) & 1U)) ++count;
        }
        observed[a].insert(count);
        if (count % 2 != 0) cert.entries[a].even = false;
      }
    }
    cert.strategies_checked = strategies;
    for (std::size_t a = 0; a < size; ++a) {
      cert.entries[a].observed.assign(observed[a].begin(), observed[a].end());
    }
  }

  const bool all_even = std::all_of(cert.entries.begin(), cert.entries.end(),
                                    [](const auto& e) { return e.even; });
  cert.contradiction = cert.pairing_verified && all_even && cert.required_total % 2 == 1;
  return cert;
}

std::string ParityCertificate::to_string() const {
  std::ostringstream out;
  out << "parity certificate for M = " << format_index_set(subset) << '\n';
  for (const auto& e : entries) {
    out << "  r_" << e.i << ": c_" << e.partner << " not visible, Q <-> Q xor {"
        << e.partner << "} keeps the decision, Q_" << e.i << (e.even ? " even" : " ODD");
    if (!e.observed.empty()) {
      std::vector<std::size_t> values(e.observed.begin(), e.observed.end());
      out << " (observed";
      for (auto v : values) out << ' ' << v;
      out << ')';
    }
    out << '\n';
  }
  out << "  pairing " << (pairing_verified ? "verified" : "FAILED") << " on all "
      << (std::uint64_t{1} << subset.size()) << " call sets in M\n";
  if (strategies_checked > 0) {
    out << "  counted over " << strategies_checked << " strategies on M\n";
  }
  out << "  sum of Q_i is even, exactly one return per nonempty call set needs 2^"
      << subset.size() << " - 1 = " << required_total << '\n';
  out << "  contradiction: " << (contradiction ? "yes, no causal strategy exists" : "no")
      << '\n';
  return out.str();
}

}  // namespace summoning
