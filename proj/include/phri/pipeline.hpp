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
#include <string>
#include <vector>

#include "json.hpp"
#include "phri/config.hpp"
#include "phri/io.hpp"

namespace phri {

// Stage layout inside the output directory:
//   maps/{transparency,robustness}_alpha_<a>.{json,csv}
//   fronts/front_alpha_<a>.{json,csv}
//   selection_report.json
//   explorer_bundle.json
std::filesystem::path map_path(const std::filesystem::path& out, MapKind kind, double alpha,
                               const char* ext);
std::filesystem::path front_path(const std::filesystem::path& out, double alpha,
                                 const char* ext);
std::filesystem::path selection_path(const std::filesystem::path& out);
std::filesystem::path bundle_path(const std::filesystem::path& out);

struct RunContext {
  ToolkitConfig config;
  std::filesystem::path out;
  std::size_t workers = 1;
};

/// Non-fatal findings of a stage (empty fronts, stale inputs, ...).
using Warnings = std::vector<std::string>;

struct MapPair {
  ObjectiveMap C;
  ObjectiveMap rho;
};

/// Both objective maps for one order, sentinel masks already merged.
MapPair compute_maps(const ToolkitConfig& config, double alpha, std::size_t workers);

/// Empty front plus a diagnostic when the maps hold no usable cell.
ParetoFront compute_front(const ToolkitConfig& config, const MapPair& maps, std::size_t workers,
                          std::string& diagnostic);

Warnings run_sweep(const RunContext& ctx);
/// Reuses map files written under the same settings, recomputes otherwise.
Warnings run_front(const RunContext& ctx);
/// Needs the front files; throws ArtifactError naming a missing one.
Warnings run_select(const RunContext& ctx);
/// Needs maps, fronts and the selection report.
Warnings run_bundle(const RunContext& ctx);

nlohmann::json selection_report(const ToolkitConfig& config,
                                 const std::vector<ParetoFront>& fronts, Warnings& warnings);

/// Map stride that keeps a rows x cols grid within 100 x 100, or the larger
/// of that and `requested`.
std::size_t bundle_stride(std::size_t rows, std::size_t cols,
                          std::optional<std::size_t> requested);

}  // namespace phri
