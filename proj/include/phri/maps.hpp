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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "phri/metrics.hpp"
#include "phri/parallel.hpp"

namespace phri {

/// Discretized (m_F, b_F) plane for one integration order. Cells are stored
/// row-major with m_F as the outer (row) axis.
class ControllerGrid {
 public:
  ControllerGrid(double alpha, std::vector<double> m_F_values, std::vector<double> b_F_values);

  double alpha() const { return alpha_; }
  const std::vector<double>& m_F_values() const { return m_F_; }
  const std::vector<double>& b_F_values() const { return b_F_; }

  std::size_t rows() const { return m_F_.size(); }
  std::size_t cols() const { return b_F_.size(); }
  std::size_t size() const { return rows() * cols(); }
  std::size_t index(std::size_t row, std::size_t col) const { return row * cols() + col; }

  /// `m_count` x `b_count` evenly spread rows/columns, endpoints kept.
  ControllerGrid subsample(std::size_t m_count, std::size_t b_count) const;
  /// Every `m_stride`-th row and `b_stride`-th column starting at 0.
  ControllerGrid stride(std::size_t m_stride, std::size_t b_stride) const;
  ControllerGrid with_alpha(double alpha) const;

  friend bool operator==(const ControllerGrid&, const ControllerGrid&) = default;

 private:
  double alpha_;
  std::vector<double> m_F_;
  std::vector<double> b_F_;
};

/// {lo} followed by every multiple of `step` in (lo, hi].
std::vector<double> make_axis(Interval range, double step);

inline constexpr Interval kDefaultMassRange{0.2, 100.0};
inline constexpr double kDefaultMassStep = 0.1;
inline constexpr Interval kDefaultDampingRange{0.001, 500.0};
inline constexpr double kDefaultDampingStep = 1.0;

/// Defaults give the 999 x 501 feasible grid.
ControllerGrid make_param_grid(double alpha, Interval m_range = kDefaultMassRange,
                               double m_step = kDefaultMassStep,
                               Interval b_range = kDefaultDampingRange,
                               double b_step = kDefaultDampingStep);

enum class MapKind { transparency, robustness };

std::string_view to_string(MapKind kind);
MapKind map_kind_from_string(std::string_view name);

/// Values of one objective over a ControllerGrid; nullopt marks a sentinel
/// cell (unstable corner or failed evaluation).
struct ObjectiveMap {
  ControllerGrid grid;
  MapKind kind;
  std::vector<std::optional<double>> values;

  const std::optional<double>& at(std::size_t row, std::size_t col) const {
    return values[grid.index(row, col)];
  }

  friend bool operator==(const ObjectiveMap&, const ObjectiveMap&) = default;
};

ObjectiveMap sweep_transparency(const PlantModel& plant, const ControllerGrid& grid,
                                const FrequencyGrid& freq, const WeightingFunction& weighting,
                                std::size_t workers = default_worker_count());

ObjectiveMap sweep_robustness(const PlantModel& plant, const ControllerGrid& grid,
                              const ImpedanceBounds& bounds, double k_eq,
                              const FrequencyGrid& freq, const FrequencyGrid& nyquist_grid,
                              std::size_t workers = default_worker_count());

/// Gives both maps the union of their sentinel masks.
void mask_pair(ObjectiveMap& c_map, ObjectiveMap& rho_map);

/// Maps divided by their maxima over non-sentinel cells.
struct NormalizedPair {
  ControllerGrid grid;
  std::vector<std::optional<double>> C;
  std::vector<std::optional<double>> rho;
  std::vector<std::optional<double>> C_n;
  std::vector<std::optional<double>> rho_n;
  double C_max = 0.0;
  double rho_max = 0.0;

  std::size_t stable_count() const;
};

/// Throws ContractViolation if the maps differ in grid or sentinel mask, and
/// DomainError if a maximum is not positive (degenerate sweep).
NormalizedPair normalize_pair(const ObjectiveMap& c_map, const ObjectiveMap& rho_map);

/// Strided view of a map for display; no interpolation.
ObjectiveMap downsample(const ObjectiveMap& map, std::size_t m_stride, std::size_t b_stride);

}  // namespace phri
