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


#include "summoning/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "summoning/format.hpp"

namespace summoning {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) +
                            " vs " + std::to_string(rhs)) {}

namespace {

void require_same_dim(const SpacetimePoint& a, const SpacetimePoint& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

}  // namespace

bool SpacetimePoint::finite() const {
  return std::isfinite(t) &&
         std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

std::string to_string(const SpacetimePoint& p) {
  return "(t=" + format_number(p.t) + ", x=[" + format_coords(p.x) + "])";
}

double interval2(const SpacetimePoint& a, const SpacetimePoint& b) {
  require_same_dim(a, b);
  const double dt = a.t - b.t;
  double space = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double d = a.x[k] - b.x[k];
    space += d * d;
  }
  return dt * dt - space;
}

double spatial_distance(const SpacetimePoint& a, const SpacetimePoint& b) {
  require_same_dim(a, b);
  double space = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double d = a.x[k] - b.x[k];
    space += d * d;
  }
  return std::sqrt(space);
}

bool causal_leq(const SpacetimePoint& y, const SpacetimePoint& x, double tol) {
  require_same_dim(y, x);
  return x.t - y.t >= -tol && interval2(x, y) >= -tol;
}

bool in_diamond(const SpacetimePoint& p, const CausalDiamond& d, double tol) {
  return causal_leq(d.call, p, tol) && causal_leq(p, d.ret, tol);
}

bool diamonds_causally_related(const CausalDiamond& di, const CausalDiamond& dj,
                               double tol) {
  if (di.empty(tol) || dj.empty(tol)) {
    throw EmptyDiamond("causal relation is undefined for an empty diamond");
  }
  return causal_leq(dj.call, di.ret, tol) || causal_leq(di.call, dj.ret, tol);
}

std::vector<SpacetimePoint> sample_diamond(const CausalDiamond& d,
                                           std::size_t n, std::uint64_t seed,
                                           double tol) {
  if (d.empty(tol)) throw EmptyDiamond("cannot sample an empty diamond");
  require_same_dim(d.call, d.ret);

  std::vector<SpacetimePoint> out{d.call, d.ret};
  out.reserve(n + 2);

  // Every point of the diamond is within the height of both endpoints.
  const double height = d.ret.t - d.call.t;
  const std::size_t dim = d.call.dim();
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    lo[k] = std::max(d.call.x[k], d.ret.x[k]) - height;
    hi[k] = std::min(d.call.x[k], d.ret.x[k]) + height;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t max_attempts = 64 * n + 64;
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; attempt < max_attempts && accepted < n; ++attempt) {
    SpacetimePoint p;
    p.t = d.call.t + height * unit(rng);
    p.x.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p.x[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
    }
    if (in_diamond(p, d, tol)) {
      out.push_back(std::move(p));
      ++accepted;
    }
  }
  return out;
}

bool sample_witness_related(const CausalDiamond& di, const CausalDiamond& dj,
                            std::size_t n, std::uint64_t seed, double tol) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  const auto pi = sample_diamond(di, n, seed, tol);
  const auto pj = sample_diamond(dj, n, seed ^ 0x9e3779b97f4a7c15ULL, tol);
  for (const auto& a : pi) {
    for (const auto& b : pj) {
      if (causal_leq(a, b, tol) || causal_leq(b, a, tol)) return true;
    }
  }
  return false;
}

}  // namespace summoning
