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
#include <stdexcept>
#include <string>
#include <vector>

namespace summoning {

/// Tolerance applied to both the time-orientation and the interval test.
inline constexpr double kDefaultTolerance = 1e-9;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

class EmptyDiamond : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of Minkowski space, time first, with light speed 1.
struct SpacetimePoint {
  double t = 0.0;
  std::vector<double> x;

  SpacetimePoint() = default;
  SpacetimePoint(double time, std::vector<double> space)
      : t(time), x(std::move(space)) {}

  std::size_t dim() const { return x.size(); }
  bool finite() const;

  friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

std::string to_string(const SpacetimePoint& p);

/// Squared Minkowski interval (t_a - t_b)^2 - |x_a - x_b|^2.
/// Positive for timelike, zero for lightlike, negative for spacelike.
double interval2(const SpacetimePoint& a, const SpacetimePoint& b);

/// Euclidean distance between the spatial parts.
double spatial_distance(const SpacetimePoint& a, const SpacetimePoint& b);

/// y <= x in the causal order: x lies in the closed future lightcone of y.
/// Lightlike separation and equality both count as causal.
bool causal_leq(const SpacetimePoint& y, const SpacetimePoint& x,
                double tol = kDefaultTolerance);

/// The set {p : call <= p <= ret}.
struct CausalDiamond {
  SpacetimePoint call;
  SpacetimePoint ret;

  /// True when ret is not in the causal future of call.
  bool empty(double tol = kDefaultTolerance) const {
    return !causal_leq(call, ret, tol);
  }

  friend bool operator==(const CausalDiamond&, const CausalDiamond&) = default;
};

bool in_diamond(const SpacetimePoint& p, const CausalDiamond& d,
                double tol = kDefaultTolerance);

/// Closed-form test for "some x_i in Di and x_j in Dj are causally ordered".
/// If x_i >= x_j then r_i >= x_i >= x_j >= c_j, so it reduces to comparing
/// one diamond's call with the other's return.
bool diamonds_causally_related(const CausalDiamond& di, const CausalDiamond& dj,
                               double tol = kDefaultTolerance);

/// Definition-level check by sampling: draws n points from each diamond
/// (endpoints always included) and looks for an ordered pair. A true result
/// is a witness; false only means none was found.
bool sample_witness_related(const CausalDiamond& di, const CausalDiamond& dj,
                            std::size_t n, std::uint64_t seed,
                            double tol = kDefaultTolerance);

/// Rejection-samples up to n interior points of a diamond, plus both
/// endpoints. Degenerate (lightlike) diamonds may yield only the endpoints.
std::vector<SpacetimePoint> sample_diamond(const CausalDiamond& d,
                                           std::size_t n, std::uint64_t seed,
                                           double tol = kDefaultTolerance);

}  // namespace summoning
