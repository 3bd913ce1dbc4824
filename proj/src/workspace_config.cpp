// Copyright 2026 The teleop-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "teleop/workspace_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "teleop/error.hpp"

namespace teleop {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(Errc::ConfigError, path + ": " + what);
}

Eigen::Vector3d vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) bad(path, "expected [x, y, z]");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) bad(path, "expected a number at index " + std::to_string(i));
    v[i] = j[i].get<double>();
  }
  return v;
}

std::vector<HalfSpace> half_spaces(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of walls");
  std::vector<HalfSpace> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const json& w = j[i];
    if (!w.is_object() || !w.contains("normal") || !w.contains("offset")) {
      bad(at, "expected {\"normal\": [..], \"offset\": d}");
    }
    if (!w["offset"].is_number()) bad(at + ".offset", "expected a number");
    out.push_back({vec3(w["normal"], at + ".normal"), w["offset"].get<double>()});
  }
  return out;
}

WallSet wall_set(const json& walls, const json* interior, const std::string& path,
                 const Eigen::Vector3d& fallback_interior) {
  const Eigen::Vector3d point = interior ? vec3(*interior, path + "interior_point") : fallback_interior;
  auto planes = half_spaces(walls, path + "walls");
  try {
    return WallSet(std::move(planes), point);
  } catch (const Error& e) {
    // Re-prefix so the message names the section (walls vs bounds.walls).
    bad(path.empty() ? "walls" : path + "walls", e.what());
  }
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json walls_json(const WallSet& set) {
  json out = json::array();
  for (const auto& w : set.walls()) out.push_back({{"normal", vec_json(w.normal)}, {"offset", w.offset}});
  return out;
}

}  // namespace

WorkspaceConfig parse_workspace_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, std::string("workspace config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("<root>", "expected a JSON object");

  WorkspaceConfig config;
  if (doc.contains("walls")) {
    const json* interior = doc.contains("interior_point") ? &doc["interior_point"] : nullptr;
    config.walls = wall_set(doc["walls"], interior, "", config.walls.interior_point());
    config.bounds = config.walls;
  }
  if (doc.contains("polytope")) {
    const json& p = doc["polytope"];
    if (!p.is_array()) bad("polytope", "expected a list of vertices");
    std::vector<Eigen::Vector3d> vertices;
    for (std::size_t i = 0; i < p.size(); ++i) vertices.push_back(vec3(p[i], "polytope[" + std::to_string(i) + "]"));
    try {
      config.polytope = BoundingPolytope(std::move(vertices));
    } catch (const Error& e) {
      bad("polytope", e.what());
    }
  }
  if (doc.contains("bounds")) {
    const json& b = doc["bounds"];
    if (!b.is_object() || !b.contains("walls")) bad("bounds", "expected {\"walls\": [..]}");
    const json* interior = b.contains("interior_point") ? &b["interior_point"] : nullptr;
    config.bounds = wall_set(b["walls"], interior, "bounds.", config.walls.interior_point());
  }
  return config;
}

WorkspaceConfig load_workspace_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_workspace_config(buffer.str());
}

std::string to_json(const WorkspaceConfig& config) {
  json polytope = json::array();
  for (const auto& v : config.polytope.vertices()) polytope.push_back(vec_json(v));
  json doc = {
      {"walls", walls_json(config.walls)},
      {"interior_point", vec_json(config.walls.interior_point())},
      {"polytope", polytope},
      {"bounds", {{"walls", walls_json(config.bounds)}, {"interior_point", vec_json(config.bounds.interior_point())}}},
  };
  return doc.dump(2);
}

}  // namespace teleop
