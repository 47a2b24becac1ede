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

#include "phri/pipeline.hpp"

#include <algorithm>

#include "phri/errors.hpp"

namespace phri {

namespace {

using nlohmann::json;

constexpr std::size_t kBundleMapLimit = 100;

std::string alpha_tag(double alpha) { return "alpha_" + format_number(alpha); }

// The parts of the echo an artifact depends on; files written under other
// alpha lists or selection settings stay reusable.
json map_settings(const json& echo) {
  json key = echo;
  for (const char* k : {"alphas", "weight_step", "constraints", "policy", "bundle"}) {
    key.erase(k);
  }
  return key;
}

json front_settings(const json& echo) {
  json key = echo;
  for (const char* k : {"alphas", "constraints", "policy", "bundle"}) {
    key.erase(k);
  }
  return key;
}

json with_config(json doc, const json& echo) {
  doc["config"] = echo;
  return doc;
}

void write_map(const std::filesystem::path& out, const ObjectiveMap& map, const json& echo) {
  const double alpha = map.grid.alpha();
  write_text_file(map_path(out, map.kind, alpha, "json"),
                  dump_json(with_config(map_to_json(map), echo)));
  write_text_file(map_path(out, map.kind, alpha, "csv"), map_to_csv(map));
}

std::optional<MapPair> load_maps(const std::filesystem::path& out, double alpha,
                                 const json& echo) {
  const auto c_file = map_path(out, MapKind::transparency, alpha, "json");
  const auto rho_file = map_path(out, MapKind::robustness, alpha, "json");
  if (!std::filesystem::exists(c_file) || !std::filesystem::exists(rho_file)) {
    return std::nullopt;
  }
  const json c_doc = read_json_file(c_file);
  const json rho_doc = read_json_file(rho_file);
  const json want = map_settings(echo);
  if (!c_doc.contains("config") || !rho_doc.contains("config") ||
      map_settings(c_doc["config"]) != want || map_settings(rho_doc["config"]) != want) {
    return std::nullopt;
  }
  MapPair maps{map_from_json(c_doc), map_from_json(rho_doc)};
  if (maps.C.kind != MapKind::transparency || maps.rho.kind != MapKind::robustness ||
      maps.C.grid.alpha() != alpha) {
    throw ArtifactError("map files for " + alpha_tag(alpha) + " hold the wrong kind or order");
  }
  return maps;
}

ParetoFront load_front(const std::filesystem::path& out, double alpha, const json& echo,
                       Warnings& warnings) {
  const auto file = front_path(out, alpha, "json");
  if (!std::filesystem::exists(file)) {
    throw ArtifactError("missing artifact " + file.string() + " (run `phrictl front` first)");
  }
  const json doc = read_json_file(file);
  if (!doc.contains("config") || front_settings(doc["config"]) != front_settings(echo)) {
    warnings.push_back(file.string() + " was produced under different settings");
  }
  ParetoFront front = front_from_json(doc);
  if (front.alpha != alpha) {
    throw ArtifactError(file.string() + " holds the front of another integration order");
  }
  return front;
}

}  // namespace

std::filesystem::path map_path(const std::filesystem::path& out, MapKind kind, double alpha,
                               const char* ext) {
  return out / "maps" /
         (std::string(to_string(kind)) + "_" + alpha_tag(alpha) + "." + ext);
}

std::filesystem::path front_path(const std::filesystem::path& out, double alpha,
                                 const char* ext) {
  return out / "fronts" / ("front_" + alpha_tag(alpha) + "." + ext);
}

std::filesystem::path selection_path(const std::filesystem::path& out) {
  return out / "selection_report.json";
}

std::filesystem::path bundle_path(const std::filesystem::path& out) {
  return out / "explorer_bundle.json";
}

MapPair compute_maps(const ToolkitConfig& config, double alpha, std::size_t workers) {
  const PlantModel plant = default_plant(config.plant);
  const ControllerGrid grid = config.controller_grid(alpha);
  const FrequencyGrid freq = config.frequency.objective_grid();
  MapPair maps{
      sweep_transparency(plant, grid, freq, config.weighting.function(), workers),
      sweep_robustness(plant, grid, config.bounds, config.k_eq, freq,
                       config.frequency.nyquist_grid(), workers)};
  mask_pair(maps.C, maps.rho);
  return maps;
}

ParetoFront compute_front(const ToolkitConfig& config, const MapPair& maps, std::size_t workers,
                          std::string& diagnostic) {
  diagnostic.clear();
  const double alpha = maps.C.grid.alpha();
  const bool any_stable = std::any_of(maps.C.values.begin(), maps.C.values.end(),
                                      [](const auto& v) { return v.has_value(); });
  if (!any_stable) {
    diagnostic = "no stable cells for alpha " + format_number(alpha);
    return {alpha, {}};
  }
  const NormalizedPair pair = normalize_pair(maps.C, maps.rho);
  const auto scan = weight_scan(pair, config.weight_step, workers);
  return assemble_front(scan, non_dominated_filter(pair));
}

Warnings run_sweep(const RunContext& ctx) {
  const json echo = config_echo(ctx.config);
  for (double alpha : ctx.config.alphas) {
    const MapPair maps = compute_maps(ctx.config, alpha, ctx.workers);
    write_map(ctx.out, maps.C, echo);
    write_map(ctx.out, maps.rho, echo);
  }
  return {};
}

Warnings run_front(const RunContext& ctx) {
  Warnings warnings;
  const json echo = config_echo(ctx.config);
  for (double alpha : ctx.config.alphas) {
    std::optional<MapPair> maps = load_maps(ctx.out, alpha, echo);
    if (!maps) {
      maps = compute_maps(ctx.config, alpha, ctx.workers);
      write_map(ctx.out, maps->C, echo);
      write_map(ctx.out, maps->rho, echo);
    }
    std::string diagnostic;
    const ParetoFront front = compute_front(ctx.config, *maps, ctx.workers, diagnostic);
    if (!diagnostic.empty()) {
      warnings.push_back(diagnostic);
    }
    json doc = with_config(front_to_json(front), echo);
    doc["diagnostic"] = diagnostic.empty() ? json(nullptr) : json(diagnostic);
    write_text_file(front_path(ctx.out, alpha, "json"), dump_json(doc));
    write_text_file(front_path(ctx.out, alpha, "csv"), front_to_csv(front));
  }
  return warnings;
}

json selection_report(const ToolkitConfig& config, const std::vector<ParetoFront>& fronts,
                      Warnings& warnings) {
  const PlantModel plant = default_plant(config.plant);
  const CutoffEvaluator cutoff = plant_cutoff_evaluator(plant, config.constraints.k_e_eval,
                                                        config.frequency.objective_grid());
  json per_alpha = json::array();
  EliminationCounts total;
  std::optional<ParetoPoint> overall;
  for (const ParetoFront& front : fronts) {
    const ConstrainedFront kept = apply_constraints(front, config.constraints, cutoff);
    total += kept.eliminated;
    json entry = {{"alpha", front.alpha},
                  {"front_size", front.size()},
                  {"eliminated_counts", counts_to_json(kept.eliminated)},
                  {"chosen", nullptr},
                  {"diagnostic", nullptr}};
    if (kept.front.empty()) {
      const std::string why = front.empty() ? "front is empty" : kept.diagnostic;
      entry["diagnostic"] = why;
      warnings.push_back("alpha " + format_number(front.alpha) + ": " + why);
    } else {
      const ParetoPoint chosen = choose_design(kept.front, config.policy);
      entry["chosen"] = point_to_json(chosen);
      if (!overall || chosen.C < overall->C) {
        overall = chosen;
      }
    }
    per_alpha.push_back(std::move(entry));
  }
  if (!overall) {
    warnings.push_back("no design satisfies the constraints for any alpha");
  }
  return {{"config", config_echo(config)},
          {"constraints", constraints_to_json(config.constraints)},
          {"policy", policy_to_json(config.policy)},
          {"per_alpha", std::move(per_alpha)},
          {"chosen", overall ? point_to_json(*overall) : json(nullptr)},
          {"eliminated_counts", counts_to_json(total)},
          {"warnings", warnings}};
}

Warnings run_select(const RunContext& ctx) {
  Warnings warnings;
  const json echo = config_echo(ctx.config);
  std::vector<ParetoFront> fronts;
  for (double alpha : ctx.config.alphas) {
    fronts.push_back(load_front(ctx.out, alpha, echo, warnings));
  }
  const json report = selection_report(ctx.config, fronts, warnings);
  write_text_file(selection_path(ctx.out), dump_json(report));
  return warnings;
}

std::size_t bundle_stride(std::size_t rows, std::size_t cols,
                          std::optional<std::size_t> requested) {
  const std::size_t longest = std::max(rows, cols);
  const std::size_t needed = (longest + kBundleMapLimit - 1) / kBundleMapLimit;
  return std::max<std::size_t>({needed, requested.value_or(1), 1});
}

Warnings run_bundle(const RunContext& ctx) {
  Warnings warnings;
  const json echo = config_echo(ctx.config);
  const PlantModel plant = default_plant(ctx.config.plant);
  const CutoffEvaluator cutoff = plant_cutoff_evaluator(plant, ctx.config.constraints.k_e_eval,
                                                        ctx.config.frequency.objective_grid());
  ExplorerBundle bundle;
  bundle.config = echo;
  for (double alpha : ctx.config.alphas) {
    ParetoFront front = load_front(ctx.out, alpha, echo, warnings);
    for (ParetoPoint& p : front.points) {
      if (!p.omega_c_hz) {
        p.omega_c_hz = cutoff(p);
      }
    }
    bundle.fronts.push_back(std::move(front));
  }
  for (double alpha : ctx.config.alphas) {
    for (MapKind kind : {MapKind::transparency, MapKind::robustness}) {
      const ObjectiveMap map = map_from_json(read_json_file(map_path(ctx.out, kind, alpha, "json")));
      const std::size_t stride =
          bundle_stride(map.grid.rows(), map.grid.cols(), ctx.config.downsample);
      bundle.maps.push_back(downsample(map, stride, stride));
    }
  }
  bundle.selection = read_json_file(selection_path(ctx.out));
  write_text_file(bundle_path(ctx.out), dump_json(bundle_to_json(bundle)));
  return warnings;
}

}  // namespace phri
