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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phri/maps.hpp"

namespace phri {

/// One non-dominated grid cell. `weight` is set only when a weight scan
/// selected the cell; `omega_c_hz` only once a cut-off has been attached.
struct ParetoPoint {
  double alpha = 1.0;
  double m_F = 0.0;
  double b_F = 0.0;
  double C = 0.0;
  double rho = 0.0;
  double C_n = 0.0;
  double rho_n = 0.0;
  std::optional<double> weight;
  std::optional<double> omega_c_hz;

  friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

/// Points sorted by rho ascending; along the front C rises with rho.
struct ParetoFront {
  double alpha = 1.0;
  std::vector<ParetoPoint> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }

  friend bool operator==(const ParetoFront&, const ParetoFront&) = default;
};

/// a is at least as good as b in both objectives and strictly better in one
/// (lower C, higher rho).
bool dominates(const ParetoPoint& a, const ParetoPoint& b);

/// Empty string when `front` is well formed; otherwise what is wrong with it.
std::string front_violation(const ParetoFront& front);

/// J = w C_n + (1 - w)(-rho_n); lower is better.
double scalarize(double C_n, double rho_n, double w);

/// Weights 0, w_step, ..., 1.
std::vector<double> weight_values(double w_step);

/// Argmin-J stable cell for every scanned weight, duplicates collapsed onto
/// the smallest selecting weight, sorted by rho. Exact J ties go to the cell
/// with lower C, then higher rho, then lower (m_F, b_F).
std::vector<ParetoPoint> weight_scan(const NormalizedPair& pair, double w_step,
                                     std::size_t workers = default_worker_count());

/// Every stable cell not weakly dominated by another; equal (C, rho) pairs
/// keep the lexicographically smallest (m_F, b_F).
ParetoFront non_dominated_filter(const NormalizedPair& pair);
ParetoFront non_dominated_filter(const ObjectiveMap& c_map, const ObjectiveMap& rho_map);

/// The exhaustive front with weights copied from the scan. Throws
/// ContractViolation if a scanned point is missing from `filtered`.
ParetoFront assemble_front(const std::vector<ParetoPoint>& scan_points,
                           const ParetoFront& filtered);

}  // namespace phri
