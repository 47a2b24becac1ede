// Copyright 2026 The phrictl Authors
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

#include "phri/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace phri {

namespace {

struct Candidate {
  std::size_t index;
  double C;
  double rho;
  double C_n;
  double rho_n;
};

std::vector<Candidate> stable_cells(const NormalizedPair& pair) {
  std::vector<Candidate> cells;
  for (std::size_t i = 0; i < pair.C.size(); ++i) {
    if (pair.C[i] && pair.rho[i]) {
      cells.push_back({i, *pair.C[i], *pair.rho[i], *pair.C_n[i], *pair.rho_n[i]});
    }
  }
  return cells;
}

ParetoPoint to_point(const NormalizedPair& pair, const Candidate& c) {
  const std::size_t row = c.index / pair.grid.cols();
  const std::size_t col = c.index % pair.grid.cols();
  ParetoPoint p;
  p.alpha = pair.grid.alpha();
  p.m_F = pair.grid.m_F_values()[row];
  p.b_F = pair.grid.b_F_values()[col];
  p.C = c.C;
  p.rho = c.rho;
  p.C_n = c.C_n;
  p.rho_n = c.rho_n;
  return p;
}

bool by_rho_then_c(const ParetoPoint& a, const ParetoPoint& b) {
  if (a.rho != b.rho) return a.rho < b.rho;
  if (a.C != b.C) return a.C < b.C;
  if (a.m_F != b.m_F) return a.m_F < b.m_F;
  return a.b_F < b.b_F;
}

}  // namespace

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
  return a.C <= b.C && a.rho >= b.rho && (a.C < b.C || a.rho > b.rho);
}

std::string front_violation(const ParetoFront& front) {
  std::ostringstream why;
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < front.points.size(); ++i) {
    const auto& p = front.points[i];
    if (!seen.emplace(p.m_F, p.b_F).second) {
      why << "duplicate cell (" << p.m_F << ", " << p.b_F << ")";
      return why.str();
    }
    if (i > 0) {
      const auto& q = front.points[i - 1];
      if (!(p.rho > q.rho)) {
        why << "rho not strictly increasing at index " << i;
        return why.str();
      }
      if (!(p.C > q.C)) {
        why << "C not strictly increasing with rho at index " << i;
        return why.str();
      }
    }
  }
  for (const auto& a : front.points) {
    for (const auto& b : front.points) {
      if (dominates(a, b)) {
        why << "(" << a.m_F << ", " << a.b_F << ") dominates (" << b.m_F << ", " << b.b_F << ")";
        return why.str();
      }
    }
  }
  return {};
}

double scalarize(double C_n, double rho_n, double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw DomainError("weight must lie in [0, 1]");
  }
  return w * C_n + (1.0 - w) * (-rho_n);
}

std::vector<double> weight_values(double w_step) {
  if (!(w_step > 0.0 && w_step <= 1.0)) {
    throw DomainError("weight step must lie in (0, 1]");
  }
  const double inverse = 1.0 / w_step;
  const bool integral = std::abs(inverse - std::round(inverse)) < 1e-9 * inverse;
  std::vector<double> w;
  if (integral) {
    const double n = std::round(inverse);
    for (double k = 0.0; k < n; k += 1.0) {
      w.push_back(k / n);
    }
  } else {
    for (double k = 0.0; k * w_step < 1.0; k += 1.0) {
      w.push_back(k * w_step);
    }
  }
  w.push_back(1.0);
  return w;
}

std::vector<ParetoPoint> weight_scan(const NormalizedPair& pair, double w_step,
                                     std::size_t workers) {
  const std::vector<double> weights = weight_values(w_step);
  const std::vector<Candidate> cells = stable_cells(pair);
  if (cells.empty()) {
    throw DomainError("weight scan over a map with no stable cells");
  }

  std::vector<std::size_t> winner(weights.size());
  parallel_for(weights.size(), workers, [&](std::size_t k) {
    const double w = weights[k];
    std::size_t best = 0;
    double best_j = scalarize(cells[0].C_n, cells[0].rho_n, w);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      const Candidate& c = cells[i];
      const double j = scalarize(c.C_n, c.rho_n, w);
      const Candidate& b = cells[best];
      // Cells are in index order, so keeping the incumbent on a full tie
      // prefers the lower (m_F, b_F).
      if (j < best_j || (j == best_j && (c.C < b.C || (c.C == b.C && c.rho > b.rho)))) {
        best = i;
        best_j = j;
      }
    }
    winner[k] = best;
  });

  std::map<std::size_t, double> first_weight;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    first_weight.emplace(winner[k], weights[k]);
  }
  std::vector<ParetoPoint> points;
  points.reserve(first_weight.size());
  for (const auto& [cell, w] : first_weight) {
    ParetoPoint p = to_point(pair, cells[cell]);
    p.weight = w;
    points.push_back(p);
  }
  std::sort(points.begin(), points.end(), by_rho_then_c);
  return points;
}

ParetoFront non_dominated_filter(const NormalizedPair& pair) {
  std::vector<Candidate> cells = stable_cells(pair);
  // Highest rho first; within equal rho lowest C, then lowest cell index.
  std::sort(cells.begin(), cells.end(), [](const Candidate& a, const Candidate& b) {
    if (a.rho != b.rho) return a.rho > b.rho;
    if (a.C != b.C) return a.C < b.C;
    return a.index < b.index;
  });

  ParetoFront front{pair.grid.alpha(), {}};
  bool have_best = false;
  double best_c = 0.0;  // lowest C among cells with strictly higher rho
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t group_end = i;
    while (group_end < cells.size() && cells[group_end].rho == cells[i].rho) {
      ++group_end;
    }
    // cells[i] is the group's lowest C; the rest of the group is dominated
    // by it or duplicates it.
    if (!have_best || cells[i].C < best_c) {
      front.points.push_back(to_point(pair, cells[i]));
      best_c = cells[i].C;
      have_best = true;
    }
    i = group_end;
  }
  std::reverse(front.points.begin(), front.points.end());
  return front;
}

ParetoFront non_dominated_filter(const ObjectiveMap& c_map, const ObjectiveMap& rho_map) {
  return non_dominated_filter(normalize_pair(c_map, rho_map));
}

ParetoFront assemble_front(const std::vector<ParetoPoint>& scan_points,
                           const ParetoFront& filtered) {
  ParetoFront front = filtered;
  for (auto& p : front.points) {
    p.weight.reset();
  }
  for (const auto& s : scan_points) {
    if (s.alpha != filtered.alpha) {
      throw ContractViolation("scan and filter come from different integration orders");
    }
    auto it = std::find_if(front.points.begin(), front.points.end(), [&](const ParetoPoint& p) {
      return p.m_F == s.m_F && p.b_F == s.b_F;
    });
    if (it == front.points.end() || it->C != s.C || it->rho != s.rho) {
      throw ContractViolation("scanned point is not on the exhaustive front; sources differ");
    }
    if (s.weight && (!it->weight || *s.weight < *it->weight)) {
      it->weight = s.weight;
    }
  }
  return front;
}

}  // namespace phri
