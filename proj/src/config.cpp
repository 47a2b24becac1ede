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

#include "phri/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "phri/errors.hpp"

namespace phri {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) {
    throw ConfigError(where + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError(key + " must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError(key + " must be finite");
  }
  return x;
}

std::optional<double> optional_number(const json& v, const std::string& key) {
  if (v.is_null()) {
    return std::nullopt;
  }
  return number(v, key);
}

std::size_t count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(key + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

Interval interval(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(key + " must be a [lo, hi] pair");
  }
  Interval r{number(v[0], key + "[0]"), number(v[1], key + "[1]")};
  if (r.lo > r.hi) {
    throw ConfigError(key + " needs lo <= hi");
  }
  return r;
}

std::vector<FractionalTerm> terms(const json& v, const std::string& key) {
  if (!v.is_array()) {
    throw ConfigError(key + " must be an array of {c, beta} terms");
  }
  std::vector<FractionalTerm> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i) + "]";
    reject_unknown(v[i], {"c", "beta"}, where);
    if (!v[i].contains("c") || !v[i].contains("beta")) {
      throw ConfigError(where + " needs both c and beta");
    }
    out.push_back({number(v[i]["c"], where + ".c"), number(v[i]["beta"], where + ".beta")});
  }
  return out;
}

json terms_json(const std::vector<FractionalTerm>& t) {
  json out = json::array();
  for (const auto& term : t) {
    out.push_back({{"c", term.coefficient}, {"beta", term.exponent}});
  }
  return out;
}

json interval_json(Interval r) { return json::array({r.lo, r.hi}); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void parse_plant(const json& p, PlantConfig& plant) {
  reject_unknown(p, {"tau_r_s", "filter_order", "filter_cutoff_hz", "G_num", "G_den", "H_num",
                     "H_den"},
                 "plant");
  if (p.contains("tau_r_s")) plant.tau_r_s = number(p["tau_r_s"], "plant.tau_r_s");
  if (p.contains("filter_order")) {
    plant.filter_order = static_cast<int>(count(p["filter_order"], "plant.filter_order"));
  }
  if (p.contains("filter_cutoff_hz")) {
    plant.filter_cutoff_hz = number(p["filter_cutoff_hz"], "plant.filter_cutoff_hz");
  }
  if (p.contains("G_num")) plant.G_num = terms(p["G_num"], "plant.G_num");
  if (p.contains("G_den")) plant.G_den = terms(p["G_den"], "plant.G_den");
  if (p.contains("H_num")) plant.H_num = terms(p["H_num"], "plant.H_num");
  if (p.contains("H_den")) plant.H_den = terms(p["H_den"], "plant.H_den");
  default_plant(plant);
}

void parse_scenario(const json& s, ToolkitConfig& config) {
  if (s.is_string()) {
    config.bounds = ImpedanceBounds::scenario(s.get<std::string>());
    config.scenario = s.get<std::string>();
    return;
  }
  reject_unknown(s, {"m_range", "b_range", "k_range"}, "scenario");
  for (const char* key : {"m_range", "b_range", "k_range"}) {
    if (!s.contains(key)) {
      throw ConfigError(std::string("scenario.") + key + " is required for explicit bounds");
    }
  }
  config.bounds = ImpedanceBounds(interval(s["m_range"], "scenario.m_range"),
                                  interval(s["b_range"], "scenario.b_range"),
                                  interval(s["k_range"], "scenario.k_range"));
  config.scenario.reset();
}

void parse_policy(const json& p, ToolkitConfig& config) {
  if (p.is_string()) {
    config.policy = SelectionPolicy::parse(p.get<std::string>());
    return;
  }
  reject_unknown(p, {"name", "weight"}, "policy");
  if (!p.contains("name") || !p["name"].is_string()) {
    throw ConfigError("policy.name must be a string");
  }
  std::optional<double> weight;
  if (p.contains("weight")) weight = optional_number(p["weight"], "policy.weight");
  config.policy = SelectionPolicy::parse(p["name"].get<std::string>(), weight);
}

}  // namespace

FrequencyGrid FrequencySettings::objective_grid() const {
  return make_log_grid(hz_to_rad(band_hz.lo), hz_to_rad(band_hz.hi), points);
}

FrequencyGrid FrequencySettings::nyquist_grid() const {
  return make_log_grid(hz_to_rad(nyquist_band_hz.lo), hz_to_rad(nyquist_band_hz.hi),
                       nyquist_points);
}

WeightingFunction WeightingSettings::function() const {
  return WeightingFunction(order, hz_to_rad(cutoff_hz));
}

ControllerGrid ToolkitConfig::controller_grid(double alpha) const {
  return make_param_grid(alpha, grid.m_F_range, grid.m_F_step, grid.b_F_range, grid.b_F_step);
}

ToolkitConfig parse_config(const json& doc) {
  reject_unknown(doc, {"plant", "scenario", "k_eq", "alphas", "grid", "frequency", "weighting",
                       "weight_step", "constraints", "policy", "output_dir", "bundle"},
                 "");
  ToolkitConfig config;
  if (doc.contains("plant")) parse_plant(doc["plant"], config.plant);
  if (doc.contains("scenario")) parse_scenario(doc["scenario"], config);
  config.k_eq = config.bounds.k.hi;
  if (doc.contains("k_eq")) {
    config.k_eq = number(doc["k_eq"], "k_eq");
    if (config.k_eq < 0.0) {
      throw ConfigError("k_eq must be non-negative");
    }
  }

  if (doc.contains("alphas")) {
    const json& a = doc["alphas"];
    if (!a.is_array()) {
      throw ConfigError("alphas must be an array");
    }
    config.alphas.clear();
    for (const auto& v : a) {
      config.alphas.push_back(number(v, "alphas[]"));
    }
  }
  if (config.alphas.empty()) {
    throw ConfigError("alphas must not be empty");
  }
  std::set<double> seen;
  for (double alpha : config.alphas) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw ConfigError("alphas entries must lie in (0, 1]");
    }
    if (!seen.insert(alpha).second) {
      throw ConfigError("alphas entries must be distinct");
    }
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    reject_unknown(g, {"m_F_range", "m_F_step", "b_F_range", "b_F_step"}, "grid");
    if (g.contains("m_F_range")) config.grid.m_F_range = interval(g["m_F_range"], "grid.m_F_range");
    if (g.contains("m_F_step")) config.grid.m_F_step = number(g["m_F_step"], "grid.m_F_step");
    if (g.contains("b_F_range")) config.grid.b_F_range = interval(g["b_F_range"], "grid.b_F_range");
    if (g.contains("b_F_step")) config.grid.b_F_step = number(g["b_F_step"], "grid.b_F_step");
  }
  const ControllerGrid probe = config.controller_grid(config.alphas.front());
  if (probe.m_F_values().front() <= 0.0) {
    throw ConfigError("grid.m_F_range must be positive");
  }

  if (doc.contains("frequency")) {
    const json& f = doc["frequency"];
    reject_unknown(f, {"band_hz", "points", "nyquist_band_hz", "nyquist_points"}, "frequency");
    if (f.contains("band_hz")) config.frequency.band_hz = interval(f["band_hz"], "frequency.band_hz");
    if (f.contains("points")) config.frequency.points = count(f["points"], "frequency.points");
    if (f.contains("nyquist_band_hz")) {
      config.frequency.nyquist_band_hz =
          interval(f["nyquist_band_hz"], "frequency.nyquist_band_hz");
    }
    if (f.contains("nyquist_points")) {
      config.frequency.nyquist_points = count(f["nyquist_points"], "frequency.nyquist_points");
    }
  }
  config.frequency.objective_grid();
  config.frequency.nyquist_grid();

  if (doc.contains("weighting")) {
    const json& w = doc["weighting"];
    reject_unknown(w, {"order", "cutoff_hz"}, "weighting");
    if (w.contains("order")) {
      config.weighting.order = static_cast<int>(count(w["order"], "weighting.order"));
    }
    if (w.contains("cutoff_hz")) {
      config.weighting.cutoff_hz = number(w["cutoff_hz"], "weighting.cutoff_hz");
    }
  }
  config.weighting.function();

  if (doc.contains("weight_step")) {
    config.weight_step = number(doc["weight_step"], "weight_step");
  }
  if (!(config.weight_step > 0.0 && config.weight_step <= 1.0)) {
    throw ConfigError("weight_step must lie in (0, 1]");
  }

  if (doc.contains("constraints")) {
    const json& c = doc["constraints"];
    reject_unknown(c, {"C_max", "rho_min", "omega_c_min_hz", "k_e_eval"}, "constraints");
    if (c.contains("C_max")) {
      config.constraints.C_max = optional_number(c["C_max"], "constraints.C_max");
    }
    if (c.contains("rho_min")) {
      config.constraints.rho_min = optional_number(c["rho_min"], "constraints.rho_min");
    }
    if (c.contains("omega_c_min_hz")) {
      config.constraints.omega_c_min_hz =
          optional_number(c["omega_c_min_hz"], "constraints.omega_c_min_hz");
    }
    if (c.contains("k_e_eval")) {
      config.constraints.k_e_eval = number(c["k_e_eval"], "constraints.k_e_eval");
    }
  }
  config.constraints.validate();

  if (doc.contains("policy")) parse_policy(doc["policy"], config);

  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty()) {
      throw ConfigError("output_dir must be a non-empty string");
    }
    config.output_dir = doc["output_dir"].get<std::string>();
  }

  if (doc.contains("bundle")) {
    const json& b = doc["bundle"];
    reject_unknown(b, {"downsample"}, "bundle");
    if (b.contains("downsample") && !b["downsample"].is_null()) {
      config.downsample = count(b["downsample"], "bundle.downsample");
    }
  }
  return config;
}

ToolkitConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json config_echo(const ToolkitConfig& config) {
  json plant = {{"tau_r_s", config.plant.tau_r_s},
                {"filter_order", config.plant.filter_order},
                {"filter_cutoff_hz", config.plant.filter_cutoff_hz}};
  if (config.plant.G_num) plant["G_num"] = terms_json(*config.plant.G_num);
  if (config.plant.G_den) plant["G_den"] = terms_json(*config.plant.G_den);
  if (config.plant.H_num) plant["H_num"] = terms_json(*config.plant.H_num);
  if (config.plant.H_den) plant["H_den"] = terms_json(*config.plant.H_den);

  json scenario = config.scenario
                      ? json(*config.scenario)
                      : json{{"m_range", interval_json(config.bounds.m)},
                             {"b_range", interval_json(config.bounds.b)},
                             {"k_range", interval_json(config.bounds.k)}};
  json policy = {{"name", config.policy.name()}};
  if (config.policy.kind == SelectionPolicy::Kind::by_weight) {
    policy["weight"] = config.policy.weight;
  }

  return {
      {"plant", plant},
      {"scenario", scenario},
      {"k_eq", config.k_eq},
      {"alphas", config.alphas},
      {"grid",
       {{"m_F_range", interval_json(config.grid.m_F_range)},
        {"m_F_step", config.grid.m_F_step},
        {"b_F_range", interval_json(config.grid.b_F_range)},
        {"b_F_step", config.grid.b_F_step}}},
      {"frequency",
       {{"band_hz", interval_json(config.frequency.band_hz)},
        {"points", config.frequency.points},
        {"nyquist_band_hz", interval_json(config.frequency.nyquist_band_hz)},
        {"nyquist_points", config.frequency.nyquist_points}}},
      {"weighting",
       {{"order", config.weighting.order}, {"cutoff_hz", config.weighting.cutoff_hz}}},
      {"weight_step", config.weight_step},
      {"constraints",
       {{"C_max", optional_json(config.constraints.C_max)},
        {"rho_min", optional_json(config.constraints.rho_min)},
        {"omega_c_min_hz", optional_json(config.constraints.omega_c_min_hz)},
        {"k_e_eval", config.constraints.k_e_eval}}},
      {"policy", policy},
      {"bundle",
       {{"downsample", config.downsample ? json(*config.downsample) : json(nullptr)}}},
  };
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--alphas entry '" + item + "' is not a number");
    }
    if (used != item.size()) {
      throw ConfigError("--alphas entry '" + item + "' is not a number");
    }
    out.push_back(value);
  }
  if (out.empty()) {
    throw ConfigError("--alphas must list at least one value");
  }
  return out;
}

}  // namespace phri
