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

#include "teleop/workspace_guard.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "teleop/error.hpp"

namespace teleop {
namespace {

constexpr double kUnitNormalTolerance = 1e-9;

std::string where(std::size_t i) { return "walls[" + std::to_string(i) + "]"; }

}  // namespace

WallSet::WallSet(std::vector<HalfSpace> walls, const Eigen::Vector3d& interior_point)
    : walls_(std::move(walls)), interior_(interior_point) {
  if (walls_.empty()) throw Error(Errc::ConfigError, "wall set is empty");
  if (!interior_.allFinite()) throw Error(Errc::ConfigError, "interior point is not finite");
  for (std::size_t i = 0; i < walls_.size(); ++i) {
    const auto& w = walls_[i];
    if (!w.normal.allFinite() || !std::isfinite(w.offset)) {
      throw Error(Errc::ConfigError, where(i) + ": non-finite value");
    }
    if (std::abs(w.normal.norm() - 1.0) > kUnitNormalTolerance) {
      throw Error(Errc::ConfigError, where(i) + ": normal is not unit length");
    }
    if (w.normal.dot(interior_) > w.offset) {
      throw Error(Errc::ConfigError, where(i) + ": excludes the interior point, intersection may be empty");
    }
  }
}

WallSet WallSet::box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  std::vector<HalfSpace> walls;
  for (int axis = 0; axis < 3; ++axis) {
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    n[axis] = 1.0;
    walls.push_back({n, hi[axis]});
    walls.push_back({-n, -lo[axis]});
  }
  return WallSet(std::move(walls), 0.5 * (lo + hi));
}

WallSet WallSet::default_workspace() {
  return box(Eigen::Vector3d(0.1, -0.45, 0.01), Eigen::Vector3d(0.75, 0.45, 0.70));
}

bool WallSet::contains(const Eigen::Vector3d& point, double slack) const {
  for (const auto& w : walls_) {
    if (w.normal.dot(point) > w.offset + slack) return false;
  }
  return true;
}

BoundingPolytope::BoundingPolytope(std::vector<Eigen::Vector3d> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 4) throw Error(Errc::ConfigError, "polytope needs at least 4 vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].allFinite()) {
      throw Error(Errc::ConfigError, "polytope[" + std::to_string(i) + "]: non-finite vertex");
    }
  }
  // Solid hull: some four vertices span a tetrahedron of non-zero volume.
  const Eigen::Vector3d& a = vertices_[0];
  double scale = 0.0;
  for (const auto& v : vertices_) scale = std::max(scale, (v - a).norm());
  bool solid = false;
  for (std::size_t i = 1; i < vertices_.size() && !solid; ++i) {
    for (std::size_t j = i + 1; j < vertices_.size() && !solid; ++j) {
      const Eigen::Vector3d n = (vertices_[i] - a).cross(vertices_[j] - a);
      for (std::size_t k = j + 1; k < vertices_.size(); ++k) {
        if (std::abs(n.dot(vertices_[k] - a)) > 1e-12 * scale * scale * scale) {
          solid = true;
          break;
        }
      }
    }
  }
  if (!solid) throw Error(Errc::ConfigError, "polytope vertices are coplanar");
}

BoundingPolytope BoundingPolytope::box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  std::vector<Eigen::Vector3d> v;
  for (int i = 0; i < 8; ++i) {
    v.emplace_back((i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(), (i & 4) ? hi.z() : lo.z());
  }
  return BoundingPolytope(std::move(v));
}

BoundingPolytope BoundingPolytope::default_hand() {
  return box(Eigen::Vector3d(-0.10, -0.10, -0.06), Eigen::Vector3d(0.10, 0.10, 0.12));
}

std::vector<Eigen::Vector3d> transform_vertices(const BoundingPolytope& polytope, const Pose& pose) {
  const Eigen::Matrix3d rotation = pose.orientation.toRotationMatrix();
  std::vector<Eigen::Vector3d> out;
  out.reserve(polytope.vertices().size());
  for (const auto& v : polytope.vertices()) out.push_back(rotation * v + pose.position);
  return out;
}

GuardVerdict pose_allowed(const BoundingPolytope& polytope, const WallSet& walls, const Pose& pose) {
  const auto world = transform_vertices(polytope, pose);
  const auto planes = walls.walls();
  for (std::size_t w = 0; w < planes.size(); ++w) {
    for (std::size_t v = 0; v < world.size(); ++v) {
      if (!(planes[w].normal.dot(world[v]) <= planes[w].offset + kWallSlack)) {
        return {false, WallViolation{w, v}};
      }
    }
  }
  return {};
}

Pose gate_goal(const Pose& last_allowed, const Pose& candidate, const BoundingPolytope& polytope,
               const WallSet& walls, GuardVerdict* verdict) {
  GuardVerdict result = pose_allowed(polytope, walls, candidate);
  if (verdict) *verdict = result;
  return result.allowed ? candidate : last_allowed;
}

}  // namespace teleop
