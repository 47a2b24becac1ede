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

#include "phri/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "phri/errors.hpp"

namespace phri {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ArtifactError(where + " lacks '" + key + "'");
  }
  return obj.at(key);
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) {
    throw ArtifactError(where + "." + key + " must be a number");
  }
  return v.get<double>();
}

std::optional<double> optional_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) {
    return std::nullopt;
  }
  return number_field(obj, key, where);
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw ArtifactError(where + " must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ArtifactError(where + " must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::string optional_csv(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) {
    throw EvaluationError("number formatting failed");
  }
  return std::string(buf.data(), end);
}

json map_to_json(const ObjectiveMap& map) {
  json values = json::array();
  for (std::size_t r = 0; r < map.grid.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < map.grid.cols(); ++c) {
      row.push_back(optional_json(map.at(r, c)));
    }
    values.push_back(std::move(row));
  }
  return {{"grid",
           {{"alpha", map.grid.alpha()},
            {"m_F", map.grid.m_F_values()},
            {"b_F", map.grid.b_F_values()}}},
          {"kind", std::string(to_string(map.kind))},
          {"values", std::move(values)}};
}

ObjectiveMap map_from_json(const json& doc) {
  const json& grid = field(doc, "grid", "map");
  const json& kind = field(doc, "kind", "map");
  if (!kind.is_string()) {
    throw ArtifactError("map.kind must be a string");
  }
  std::optional<ControllerGrid> g;
  MapKind k{};
  try {
    g.emplace(number_field(grid, "alpha", "map.grid"),
              number_array(field(grid, "m_F", "map.grid"), "map.grid.m_F"),
              number_array(field(grid, "b_F", "map.grid"), "map.grid.b_F"));
    k = map_kind_from_string(kind.get<std::string>());
  } catch (const ConfigError& e) {
    throw ArtifactError(std::string("map: ") + e.what());
  }
  const json& values = field(doc, "values", "map");
  if (!values.is_array() || values.size() != g->rows()) {
    throw ArtifactError("map.values must have one row per m_F value");
  }
  ObjectiveMap map{*g, k, {}};
  map.values.reserve(g->size());
  for (const auto& row : values) {
    if (!row.is_array() || row.size() != g->cols()) {
      throw ArtifactError("map.values rows must have one entry per b_F value");
    }
    for (const auto& v : row) {
      if (v.is_null()) {
        map.values.emplace_back();
      } else if (v.is_number()) {
        map.values.emplace_back(v.get<double>());
      } else {
        throw ArtifactError("map.values entries must be numbers or null");
      }
    }
  }
  return map;
}

std::string map_to_csv(const ObjectiveMap& map) {
  std::string out = "m_F,b_F,value\n";
  for (std::size_t r = 0; r < map.grid.rows(); ++r) {
    const std::string m = format_number(map.grid.m_F_values()[r]) + ",";
    for (std::size_t c = 0; c < map.grid.cols(); ++c) {
      out += m;
      out += format_number(map.grid.b_F_values()[c]);
      out += ",";
      out += optional_csv(map.at(r, c));
      out += "\n";
    }
  }
  return out;
}

json point_to_json(const ParetoPoint& p) {
  return {{"alpha", p.alpha},   {"m_F", p.m_F},         {"b_F", p.b_F},
          {"C", p.C},           {"rho", p.rho},         {"C_n", p.C_n},
          {"rho_n", p.rho_n},   {"w", optional_json(p.weight)},
          {"omega_c_hz", optional_json(p.omega_c_hz)}};
}

ParetoPoint point_from_json(const json& doc) {
  const std::string where = "point";
  ParetoPoint p;
  p.alpha = number_field(doc, "alpha", where);
  p.m_F = number_field(doc, "m_F", where);
  p.b_F = number_field(doc, "b_F", where);
  p.C = number_field(doc, "C", where);
  p.rho = number_field(doc, "rho", where);
  p.C_n = number_field(doc, "C_n", where);
  p.rho_n = number_field(doc, "rho_n", where);
  p.weight = optional_field(doc, "w", where);
  p.omega_c_hz = optional_field(doc, "omega_c_hz", where);
  return p;
}

json front_to_json(const ParetoFront& front) {
  json points = json::array();
  for (const auto& p : front.points) {
    points.push_back(point_to_json(p));
  }
  return {{"alpha", front.alpha}, {"points", std::move(points)}};
}

ParetoFront front_from_json(const json& doc) {
  ParetoFront front;
  front.alpha = number_field(doc, "alpha", "front");
  const json& points = field(doc, "points", "front");
  if (!points.is_array()) {
    throw ArtifactError("front.points must be an array");
  }
  for (const auto& p : points) {
    front.points.push_back(point_from_json(p));
    if (front.points.back().alpha != front.alpha) {
      throw ArtifactError("front point has a different alpha than its front");
    }
  }
  return front;
}

std::string front_to_csv(const ParetoFront& front) {
  std::string out = "alpha,m_F,b_F,C,rho,w\n";
  for (const auto& p : front.points) {
    out += format_number(p.alpha) + "," + format_number(p.m_F) + "," + format_number(p.b_F) +
           "," + format_number(p.C) + "," + format_number(p.rho) + "," + optional_csv(p.weight) +
           "\n";
  }
  return out;
}

json counts_to_json(const EliminationCounts& counts) {
  return {{"by_C", counts.by_C},
          {"by_rho", counts.by_rho},
          {"by_omega_c", counts.by_omega_c},
          {"total", counts.total},
          {"feasible", counts.feasible}};
}

json constraints_to_json(const SelectionConstraints& cons) {
  return {{"C_max", optional_json(cons.C_max)},
          {"rho_min", optional_json(cons.rho_min)},
          {"omega_c_min_hz", optional_json(cons.omega_c_min_hz)},
          {"k_e_eval", cons.k_e_eval}};
}

json policy_to_json(const SelectionPolicy& policy) {
  json out = {{"name", policy.name()}};
  if (policy.kind == SelectionPolicy::Kind::by_weight) {
    out["weight"] = policy.weight;
  }
  return out;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ArtifactError("missing artifact " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArtifactError("artifact " + path.string() + " is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ArtifactError("cannot write " + tmp.string());
    }
    out << text;
    if (!out.flush()) {
      throw ArtifactError("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

json bundle_to_json(const ExplorerBundle& bundle) {
  json fronts = json::array();
  for (const auto& f : bundle.fronts) {
    fronts.push_back(front_to_json(f));
  }
  json maps = json::array();
  for (const auto& m : bundle.maps) {
    maps.push_back(map_to_json(m));
  }
  return {{"version", bundle.version},
          {"config", bundle.config},
          {"fronts", std::move(fronts)},
          {"maps", std::move(maps)},
          {"selection", bundle.selection}};
}

ExplorerBundle bundle_from_json(const json& doc) {
  const json& version = field(doc, "version", "bundle");
  if (!version.is_string() || version.get<std::string>() != kBundleVersion) {
    throw ArtifactError(std::string("bundle version must be '") + kBundleVersion + "'");
  }
  ExplorerBundle bundle;
  bundle.config = field(doc, "config", "bundle");
  if (!bundle.config.is_object()) {
    throw ArtifactError("bundle.config must be an object");
  }
  const json& fronts = field(doc, "fronts", "bundle");
  const json& maps = field(doc, "maps", "bundle");
  if (!fronts.is_array() || !maps.is_array()) {
    throw ArtifactError("bundle.fronts and bundle.maps must be arrays");
  }
  for (const auto& f : fronts) {
    bundle.fronts.push_back(front_from_json(f));
    const std::string why = front_violation(bundle.fronts.back());
    if (!why.empty()) {
      throw ArtifactError("bundle front for alpha " + format_number(bundle.fronts.back().alpha) +
                          " is malformed: " + why);
    }
  }
  for (const auto& m : maps) {
    bundle.maps.push_back(map_from_json(m));
  }
  bundle.selection = field(doc, "selection", "bundle");
  if (!bundle.selection.is_object()) {
    throw ArtifactError("bundle.selection must be an object");
  }
  return bundle;
}

}  // namespace phri
