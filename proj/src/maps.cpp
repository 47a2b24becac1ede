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

#include "phri/maps.hpp"

#include <cmath>
#include <string>

namespace phri {

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw ConfigError(std::string(name) + " axis is empty");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i]) || axis[i] < 0.0) {
      throw ConfigError(std::string(name) + " axis values must be finite and non-negative");
    }
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw ConfigError(std::string(name) + " axis must be strictly increasing");
    }
  }
}

std::vector<std::size_t> spread_indices(std::size_t n, std::size_t count) {
  count = std::min(count, n);
  if (count == 0) {
    throw ConfigError("subsample count must be positive");
  }
  std::vector<std::size_t> idx;
  idx.reserve(count);
  if (count == 1) {
    idx.push_back(0);
    return idx;
  }
  for (std::size_t i = 0; i < count; ++i) {
    idx.push_back((i * (n - 1) + (count - 1) / 2) / (count - 1));
  }
  return idx;
}

std::vector<std::size_t> strided_indices(std::size_t n, std::size_t stride) {
  if (stride == 0) {
    throw ConfigError("stride must be positive");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride) {
    idx.push_back(i);
  }
  return idx;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    out.push_back(v[i]);
  }
  return out;
}

void require_same_grid(const ObjectiveMap& a, const ObjectiveMap& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    throw ContractViolation("paired maps are defined on different grids");
  }
}

std::optional<double> finite_max(const std::vector<std::optional<double>>& v) {
  std::optional<double> best;
  for (const auto& x : v) {
    if (x && std::isfinite(*x) && (!best || *x > *best)) {
      best = *x;
    }
  }
  return best;
}

}  // namespace

ControllerGrid::ControllerGrid(double alpha, std::vector<double> m_F_values,
                               std::vector<double> b_F_values)
    : alpha_(alpha), m_F_(std::move(m_F_values)), b_F_(std::move(b_F_values)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("integration order must lie in (0, 1]");
  }
  check_axis(m_F_, "m_F");
  check_axis(b_F_, "b_F");
}

ControllerGrid ControllerGrid::subsample(std::size_t m_count, std::size_t b_count) const {
  return {alpha_, pick(m_F_, spread_indices(rows(), m_count)),
          pick(b_F_, spread_indices(cols(), b_count))};
}

ControllerGrid ControllerGrid::stride(std::size_t m_stride, std::size_t b_stride) const {
  return {alpha_, pick(m_F_, strided_indices(rows(), m_stride)),
          pick(b_F_, strided_indices(cols(), b_stride))};
}

ControllerGrid ControllerGrid::with_alpha(double alpha) const { return {alpha, m_F_, b_F_}; }

std::vector<double> make_axis(Interval range, double step) {
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo > range.hi) {
    throw ConfigError("axis range needs lo <= hi");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("axis step must be positive");
  }
  // Multiples are formed as k / (1 / step) when 1 / step is integral, so a
  // 0.1 step yields 0.3 rather than 3 * 0.1.
  const double inverse = 1.0 / step;
  const bool integral_inverse = std::abs(inverse - std::round(inverse)) < 1e-9 * inverse;
  const auto multiple = [&](double k) {
    return integral_inverse ? k / std::round(inverse) : k * step;
  };
  const double eps = 1e-9 * step;
  std::vector<double> axis{range.lo};
  for (double k = std::floor(range.lo / step);; k += 1.0) {
    const double v = multiple(k);
    if (v > range.hi + eps) {
      break;
    }
    if (v > range.lo + eps) {
      axis.push_back(std::min(v, range.hi));
    }
  }
  return axis;
}

ControllerGrid make_param_grid(double alpha, Interval m_range, double m_step, Interval b_range,
                               double b_step) {
  return {alpha, make_axis(m_range, m_step), make_axis(b_range, b_step)};
}

std::string_view to_string(MapKind kind) {
  return kind == MapKind::transparency ? "transparency" : "robustness";
}

MapKind map_kind_from_string(std::string_view name) {
  if (name == "transparency") {
    return MapKind::transparency;
  }
  if (name == "robustness") {
    return MapKind::robustness;
  }
  throw ConfigError("unknown map kind '" + std::string(name) + "'");
}

ObjectiveMap sweep_transparency(const PlantModel& plant, const ControllerGrid& grid,
                                const FrequencyGrid& freq, const WeightingFunction& weighting,
                                std::size_t workers) {
  const LoopSampler sampler(plant, grid.alpha(), freq);
  const std::vector<double> weights = weighting.sample(freq);
  ObjectiveMap map{grid, MapKind::transparency, std::vector<std::optional<double>>(grid.size())};
  parallel_for(grid.rows(), workers, [&](std::size_t row) {
    for (std::size_t col = 0; col < grid.cols(); ++col) {
      std::optional<double> value;
      try {
        const AdmittanceController ctrl(grid.alpha(), grid.m_F_values()[row],
                                        grid.b_F_values()[col]);
        const double c = transparency_cost(sampler, ctrl, weights);
        if (std::isfinite(c)) {
          value = c;
        }
      } catch (const ConfigError&) {
      } catch (const EvaluationError&) {
      }
      map.values[grid.index(row, col)] = value;
    }
  });
  return map;
}

ObjectiveMap sweep_robustness(const PlantModel& plant, const ControllerGrid& grid,
                              const ImpedanceBounds& bounds, double k_eq,
                              const FrequencyGrid& freq, const FrequencyGrid& nyquist_grid,
                              std::size_t workers) {
  const LoopSampler objective(plant, grid.alpha(), freq);
  const LoopSampler nyquist(plant, grid.alpha(), nyquist_grid);
  ObjectiveMap map{grid, MapKind::robustness, std::vector<std::optional<double>>(grid.size())};
  parallel_for(grid.rows(), workers, [&](std::size_t row) {
    for (std::size_t col = 0; col < grid.cols(); ++col) {
      std::optional<double> value;
      try {
        const AdmittanceController ctrl(grid.alpha(), grid.m_F_values()[row],
                                        grid.b_F_values()[col]);
        value = worst_case_margin(objective, nyquist, ctrl, bounds, k_eq);
        if (value && !(std::isfinite(*value) && *value > 0.0)) {
          value.reset();
        }
      } catch (const ConfigError&) {
      } catch (const EvaluationError&) {
      } catch (const GridTooCoarse&) {
      }
      map.values[grid.index(row, col)] = value;
    }
  });
  return map;
}

void mask_pair(ObjectiveMap& c_map, ObjectiveMap& rho_map) {
  require_same_grid(c_map, rho_map);
  for (std::size_t i = 0; i < c_map.values.size(); ++i) {
    if (!c_map.values[i] || !rho_map.values[i]) {
      c_map.values[i].reset();
      rho_map.values[i].reset();
    }
  }
}

std::size_t NormalizedPair::stable_count() const {
  std::size_t n = 0;
  for (const auto& v : C) {
    n += v.has_value() ? 1 : 0;
  }
  return n;
}

NormalizedPair normalize_pair(const ObjectiveMap& c_map, const ObjectiveMap& rho_map) {
  require_same_grid(c_map, rho_map);
  for (std::size_t i = 0; i < c_map.values.size(); ++i) {
    if (c_map.values[i].has_value() != rho_map.values[i].has_value()) {
      throw ContractViolation("paired maps do not share a sentinel mask");
    }
  }
  const auto c_max = finite_max(c_map.values);
  const auto rho_max = finite_max(rho_map.values);
  if (!c_max || !rho_max || !(*c_max > 0.0) || !(*rho_max > 0.0)) {
    throw DomainError("cannot normalize: no stable cells or non-positive maximum");
  }
  NormalizedPair pair{c_map.grid, c_map.values, rho_map.values, {}, {}, *c_max, *rho_max};
  pair.C_n.resize(pair.C.size());
  pair.rho_n.resize(pair.rho.size());
  for (std::size_t i = 0; i < pair.C.size(); ++i) {
    if (pair.C[i]) {
      pair.C_n[i] = *pair.C[i] / pair.C_max;
      pair.rho_n[i] = *pair.rho[i] / pair.rho_max;
    }
  }
  return pair;
}

ObjectiveMap downsample(const ObjectiveMap& map, std::size_t m_stride, std::size_t b_stride) {
  const auto rows = strided_indices(map.grid.rows(), m_stride);
  const auto cols = strided_indices(map.grid.cols(), b_stride);
  ObjectiveMap out{map.grid.stride(m_stride, b_stride), map.kind, {}};
  out.values.reserve(rows.size() * cols.size());
  for (std::size_t r : rows) {
    for (std::size_t c : cols) {
      out.values.push_back(map.at(r, c));
    }
  }
  return out;
}

}  // namespace phri
