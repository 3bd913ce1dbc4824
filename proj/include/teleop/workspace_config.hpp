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

#pragma once

#include <filesystem>
#include <string>

#include "teleop/workspace_guard.hpp"

namespace teleop {

/// Safety geometry for one session: operator walls, the end-effector hull,
/// and the containment region for simulated objects (defaults to the walls).
struct WorkspaceConfig {
  WallSet walls = WallSet::default_workspace();
  BoundingPolytope polytope = BoundingPolytope::default_hand();
  WallSet bounds = WallSet::default_workspace();
};

/// JSON document, all values in SI units:
///   {
///     "walls": [{"normal": [nx, ny, nz], "offset": d}, ...],
///     "interior_point": [x, y, z],
///     "polytope": [[x, y, z], ...],
///     "bounds": {"walls": [...], "interior_point": [x, y, z]}
///   }
/// Every key is optional; missing sections keep their defaults. Errors are
/// ConfigError naming the offending entry, e.g. "walls[2].normal".
WorkspaceConfig parse_workspace_config(const std::string& json_text);
WorkspaceConfig load_workspace_config(const std::filesystem::path& path);

std::string to_json(const WorkspaceConfig& config);

}  // namespace teleop
