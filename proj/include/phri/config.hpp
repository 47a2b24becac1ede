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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "phri/maps.hpp"
#include "phri/select.hpp"

namespace phri {

struct GridSettings {
  Interval m_F_range = kDefaultMassRange;
  double m_F_step = kDefaultMassStep;
  Interval b_F_range = kDefaultDampingRange;
  double b_F_step = kDefaultDampingStep;

  friend bool operator==(const GridSettings&, const GridSettings&) = default;
};

struct FrequencySettings {
  Interval band_hz{0.01, 30.0};
  std::size_t points = 500;
  Interval nyquist_band_hz{1e-3, 1e4};
  std::size_t nyquist_points = 4000;

  FrequencyGrid objective_grid() const;
  FrequencyGrid nyquist_grid() const;

  friend bool operator==(const FrequencySettings&, const FrequencySettings&) = default;
};

struct WeightingSettings {
  int order = 5;
  double cutoff_hz = 5.0;

  WeightingFunction function() const;

  friend bool operator==(const WeightingSettings&, const WeightingSettings&) = default;
};

/// Everything a run needs. Defaults reproduce the reference pipeline: S1
/// bounds, the 999 x 501 grid, 0.01-30 Hz with a 5th-order 5 Hz weighting,
/// 0.001 weight step, rho >= 0.55 and omega_c >= 2.3 Hz at k_e = 610 N/m.
struct ToolkitConfig {
  PlantConfig plant;
  std::optional<std::string> scenario = "S1";  // unset when bounds are explicit
  ImpedanceBounds bounds = ImpedanceBounds::scenario("S1");
  double k_eq = 600.0;  // stiffness for the robustness corners
  std::vector<double> alphas{1.0, 0.7, 0.4};
  GridSettings grid;
  FrequencySettings frequency;
  WeightingSettings weighting;
  double weight_step = 0.001;
  SelectionConstraints constraints{std::nullopt, 0.55, 2.3, 610.0};
  SelectionPolicy policy = SelectionPolicy::min_C();
  std::filesystem::path output_dir = "out";
  std::optional<std::size_t> downsample;  // bundle map stride; auto when unset

  ControllerGrid controller_grid(double alpha) const;

  friend bool operator==(const ToolkitConfig&, const ToolkitConfig&) = default;
};

/// Validates and fills defaults. Unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the offending key.
ToolkitConfig parse_config(const nlohmann::json& doc);
ToolkitConfig load_config(const std::filesystem::path& path);

/// The resolved computation settings (output location excluded), suitable for
/// embedding in artifacts and for feeding back into parse_config.
nlohmann::json config_echo(const ToolkitConfig& config);

/// "1,0.7,0.4" -> {1, 0.7, 0.4}.
std::vector<double> parse_alpha_list(const std::string& text);

}  // namespace phri
