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
#include "phri/pareto.hpp"
#include "phri/select.hpp"

namespace phri {

/// Shortest decimal that parses back to the same double.
std::string format_number(double x);

// Maps. JSON carries the grid axes and a rows x cols value matrix (null for
// sentinel cells); CSV is `m_F,b_F,value`, row-major, empty for sentinels.
nlohmann::json map_to_json(const ObjectiveMap& map);
ObjectiveMap map_from_json(const nlohmann::json& doc);
std::string map_to_csv(const ObjectiveMap& map);

// Fronts. Absent w / omega_c are null in JSON and empty in CSV.
nlohmann::json point_to_json(const ParetoPoint& p);
ParetoPoint point_from_json(const nlohmann::json& doc);
nlohmann::json front_to_json(const ParetoFront& front);
ParetoFront front_from_json(const nlohmann::json& doc);
std::string front_to_csv(const ParetoFront& front);

nlohmann::json counts_to_json(const EliminationCounts& counts);
nlohmann::json constraints_to_json(const SelectionConstraints& cons);
nlohmann::json policy_to_json(const SelectionPolicy& policy);

/// Deterministic text form of a JSON document (sorted keys, two-space indent,
/// trailing newline).
std::string dump_json(const nlohmann::json& doc);

/// Throws ArtifactError naming the file when it cannot be read or parsed.
nlohmann::json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
void write_text_file(const std::filesystem::path& path, const std::string& text);

inline constexpr const char* kBundleVersion = "phrictl-bundle/1";

struct ExplorerBundle {
  std::string version = kBundleVersion;
  nlohmann::json config;
  std::vector<ParetoFront> fronts;
  std::vector<ObjectiveMap> maps;
  nlohmann::json selection;

  friend bool operator==(const ExplorerBundle&, const ExplorerBundle&) = default;
};

nlohmann::json bundle_to_json(const ExplorerBundle& bundle);
/// Validates the version tag, the record shapes and the front invariants.
/// Throws ArtifactError with a diagnostic on any mismatch.
ExplorerBundle bundle_from_json(const nlohmann::json& doc);

}  // namespace phri
