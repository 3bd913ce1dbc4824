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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teleop/geometry.hpp"

namespace teleop {

/// Half-space admitting points x with normal · x ≤ offset.
struct HalfSpace {
  Eigen::Vector3d normal;
  double offset = 0.0;
};

/// Convex workspace bounded by half-spaces. Construction validates unit
/// normals and that a configured interior point lies inside every wall.
class WallSet {
 public:
  WallSet(std::vector<HalfSpace> walls, const Eigen::Vector3d& interior_point);

  // Axis-aligned tabletop box: x ∈ [0.1, 0.75], y ∈ [−0.45, 0.45], z ∈ [0.01, 0.70].
  static WallSet default_workspace();
  static WallSet box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi);

  std::span<const HalfSpace> walls() const { return walls_; }
  const Eigen::Vector3d& interior_point() const { return interior_; }
  std::size_t size() const { return walls_.size(); }

  bool contains(const Eigen::Vector3d& point, double slack = 0.0) const;

 private:
  std::vector<HalfSpace> walls_;
  Eigen::Vector3d interior_;
};

/// Vertices of a convex hull enclosing the end-effector, in its body frame.
class BoundingPolytope {
 public:
  explicit BoundingPolytope(std::vector<Eigen::Vector3d> vertices);

  // Box around the Franka hand: x, y ∈ [−0.10, 0.10], z ∈ [−0.06, 0.12].
  static BoundingPolytope default_hand();
  static BoundingPolytope box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi);

  std::span<const Eigen::Vector3d> vertices() const { return vertices_; }

 private:
  std::vector<Eigen::Vector3d> vertices_;
};

// Slack applied to every wall inequality; boundary contact counts as inside.
inline constexpr double kWallSlack = 1e-9;

struct WallViolation {
  std::size_t wall = 0;
  std::size_t vertex = 0;

  friend bool operator==(const WallViolation&, const WallViolation&) = default;
};

struct GuardVerdict {
  bool allowed = true;
  std::optional<WallViolation> violation;  // first (wall, vertex) pair, wall-major

  explicit operator bool() const { return allowed; }
};

std::vector<Eigen::Vector3d> transform_vertices(const BoundingPolytope& polytope, const Pose& pose);

GuardVerdict pose_allowed(const BoundingPolytope& polytope, const WallSet& walls, const Pose& pose);

/// The goal actually emitted: the candidate when it keeps the polytope
/// inside the walls, otherwise the last allowed goal.
Pose gate_goal(const Pose& last_allowed, const Pose& candidate, const BoundingPolytope& polytope,
               const WallSet& walls, GuardVerdict* verdict = nullptr);

}  // namespace teleop
