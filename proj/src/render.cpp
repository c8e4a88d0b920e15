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


#include "summoning/render.hpp"

#include <sstream>

#include "summoning/format.hpp"

namespace summoning {

std::vector<LabeledPoint> labeled_points(const SummoningTask& task) {
  std::vector<LabeledPoint> out{{"s", task.start}};
  for (std::size_t i = 1; i <= task.size(); ++i) {
    out.push_back({"c" + std::to_string(i), task.call(i)});
    out.push_back({"r" + std::to_string(i), task.ret(i)});
  }
  return out;
}

namespace {

// Strictly below: a <= b but not b <= a. Coincident points are unrelated here.
std::vector<std::vector<bool>> strict_order(const std::vector<LabeledPoint>& pts, double tol) {
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      below[a][b] = causal_leq(pts[a].point, pts[b].point, tol) &&
                    !causal_leq(pts[b].point, pts[a].point, tol);
    }
  }
  return below;
}

}  // namespace

std::string render_dot(const SummoningTask& task) {
  const auto pts = labeled_points(task);
  const auto below = strict_order(pts, task.tol);
  const std::size_t n = pts.size();

  std::ostringstream out;
  out << "digraph causal_order {\n  rankdir=BT;\n";
  for (const auto& p : pts) {
    out << "  " << p.label << " [label=\"" << p.label << "\\nt=" << format_number(p.point.t)
        << " x=(" << format_coords(p.point.x) << ")\"";
    if (p.label == "s") out << ", shape=doublecircle";
    else if (p.label[0] == 'c') out << ", shape=box";
    out << "];\n";
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool covered = true;
      for (std::size_t m = 0; m < n && covered; ++m) {
        if (below[a][m] && below[m][b]) covered = false;
      }
      if (covered) out << "  " << pts[a].label << " -> " << pts[b].label << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_csv(const SummoningTask& task) {
  const auto pts = labeled_points(task);
  const std::size_t width = task.dim;
  std::ostringstream out;
  out << "kind,label,t";
  for (std::size_t k = 1; k <= width; ++k) out << ",x" << k;
  out << '\n';
  for (const auto& p : pts) {
    out << "point," << p.label << ',' << format_number(p.point.t);
    for (double v : p.point.x) out << ',' << format_number(v);
    out << '\n';
  }
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      if (&a == &b || !causal_leq(a.point, b.point, task.tol)) continue;
      out << "causal," << a.label << ',' << b.label;
      for (std::size_t k = 0; k < width; ++k) out << ',';
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace summoning
