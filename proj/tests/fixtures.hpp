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

// Published optimal designs as fixture fronts. The tabulated rows carry
// their published (rho, C, w); the neighbouring points and every omega_c
// value are fixture annotations, chosen so that each bound rejects at
// least one point.

#pragma once

#include <vector>

#include "phri/pareto.hpp"

namespace fixture {

struct Row {
  double alpha, m_F, b_F, rho, C, w;
};

// Optimal designs for rho >= 0.55 and omega_c >= 2.3 Hz.
inline const std::vector<Row> kTableOne = {
    {1.0, 3.2, 90.0, 0.553, 16.9, 0.796},
    {0.7, 6.0, 74.0, 0.568, 14.5, 0.755},
    {0.4, 16.7, 56.0, 0.594, 13.0, 0.737},
};

// Designs matched to the integer-order robustness rho = 0.553.
inline const std::vector<Row> kTableTwo = {
    {1.0, 3.2, 90.0, 0.553, 16.9, 0.796},
    {0.7, 5.8, 71.0, 0.553, 13.9, 0.770},
    {0.4, 15.4, 49.0, 0.553, 11.5, 0.776},
};

inline phri::ParetoPoint point(double alpha, double m_F, double b_F, double C, double rho,
                               std::optional<double> w, double omega_c_hz) {
  phri::ParetoPoint p;
  p.alpha = alpha;
  p.m_F = m_F;
  p.b_F = b_F;
  p.C = C;
  p.rho = rho;
  p.C_n = C / 20.0;
  p.rho_n = rho / 0.8;
  p.weight = w;
  p.omega_c_hz = omega_c_hz;
  return p;
}

/// One front per row: a low-rho point (fails rho), a point that fails only
/// the cut-off bound, the row itself, and a costlier feasible point.
inline std::vector<phri::ParetoFront> fronts(const std::vector<Row>& rows) {
  std::vector<phri::ParetoFront> out;
  for (const Row& r : rows) {
    phri::ParetoFront f{r.alpha, {}};
    f.points.push_back(point(r.alpha, r.m_F * 0.5, r.b_F * 0.6, r.C - 3.0, 0.50, {}, 3.1));
    f.points.push_back(point(r.alpha, r.m_F * 0.8, r.b_F * 0.9, r.C - 0.5, r.rho - 0.002, {}, 2.1));
    f.points.push_back(point(r.alpha, r.m_F, r.b_F, r.C, r.rho, r.w, 2.4));
    f.points.push_back(point(r.alpha, r.m_F * 1.2, r.b_F * 1.1, r.C + 1.0, r.rho + 0.02, {}, 2.6));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace fixture
