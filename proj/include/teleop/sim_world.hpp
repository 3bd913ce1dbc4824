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

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "teleop/scene_registry.hpp"
#include "teleop/wire_protocol.hpp"
#include "teleop/workspace_guard.hpp"

namespace teleop {

struct MotionLimits {
  double max_linear_speed = 1.0;   // m/s
  double max_angular_speed = 2.0;  // rad/s
  double gripper_speed = 0.1;      // m/s
};

struct GraspModel {
  double grasp_radius = 0.03;  // m, object center to gripper midpoint
  double grip_margin = 0.002;  // m
};

/// Uniform ranges for randomly spawned blocks. Positions are additionally
/// rejection-sampled into the containment bounds.
struct SpawnRanges {
  Eigen::Vector3d position_lo{0.2, -0.35, 0.03};
  Eigen::Vector3d position_hi{0.65, 0.35, 0.5};
  double max_linear_speed = 0.1;   // per component, m/s
  double max_angular_speed = 1.0;  // per component, rad/s
  double half_extent_lo = 0.02;
  double half_extent_hi = 0.02;
};

struct SimConfig {
  Pose home = Pose::from_position(0.4, 0.0, 0.3);
  double home_width = kMaxGripperWidth;
  MotionLimits limits;
  GraspModel grasp;
  double tick_dt = 1.0 / 120.0;
  WallSet bounds = WallSet::default_workspace();
  SpawnRanges spawn;
  std::uint64_t seed = 1;
};

struct RobotState {
  Pose ee_pose;
  Twist ee_twist;
  double gripper_width = 0.0;
  Pose goal_pose;
  double goal_width = 0.0;
  bool grip_engaged = false;
};

struct WorldObject {
  ObjectRecord record;
  bool grasped = false;
  Pose grasp_offset;  // object pose in the end-effector frame while grasped
};

struct SimStats {
  std::uint64_t ticks = 0;
  std::uint64_t width_clamps = 0;
  std::uint64_t creates_emitted = 0;
  std::uint64_t deletes_emitted = 0;
};

/// Controller-side stand-in for the robot driver and the vision system: a
/// rate-limited goal-tracking end-effector, a parallel gripper with a
/// proximity/width grasp model, and kinematic blocks that drift and bounce
/// inside the containment bounds. Ground truth doubles as "vision".
class SimWorld {
 public:
  explicit SimWorld(SimConfig config = {});

  // The four driver commands.
  void go_to_pose(const Pose& goal);
  void go_to_gripper(double width);
  Pose get_pose() const { return robot_.ee_pose; }
  double get_gripper_width() const { return robot_.gripper_width; }

  /// Advances one tick and returns the scene update describing it. The
  /// message seq is left at 0; the transport stamps it.
  SceneUpdateMessage step();

  ObjectKey spawn_block(std::optional<ObjectSpec> spec = std::nullopt, std::optional<Pose> pose = std::nullopt,
                        std::optional<Twist> twist = std::nullopt);
  // Removes a live object and queues its delete. False if the key is not live.
  bool remove_object(ObjectKey key);

  void recover_unknown(std::span<const ObjectKey> unknown_keys);
  void apply_goal_command(const GoalCommandMessage& msg);

  const RobotState& robot() const { return robot_; }
  const std::map<ObjectKey, WorldObject>& objects() const { return objects_; }
  std::vector<ObjectKey> live_keys() const;
  const SimConfig& config() const { return config_; }
  const SimStats& stats() const { return stats_; }
  double time() const { return static_cast<double>(stats_.ticks) * config_.tick_dt; }

  // Width the fingers close to when holding this object.
  static double grip_width(const ObjectSpec& spec);

 private:
  void move_end_effector(double dt);
  void resolve_grasp();
  void slew_gripper(double dt);
  void integrate_free_objects(double dt);
  WorldObject* grasped_object();

  SimConfig config_;
  RobotState robot_;
  std::map<ObjectKey, WorldObject> objects_;
  std::set<ObjectKey> pending_creates_;
  std::set<ObjectKey> pending_deletes_;
  std::uint32_t next_key_ = 1;
  std::mt19937_64 rng_;
  SimStats stats_;
};

}  // namespace teleop
