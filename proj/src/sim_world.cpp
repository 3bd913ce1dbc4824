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

#include "teleop/sim_world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "teleop/error.hpp"

namespace teleop {
namespace {

Eigen::Vector3d rotation_vector(const Eigen::Quaterniond& q) {
  const Eigen::AngleAxisd aa(q.w() < 0 ? Eigen::Quaterniond(-q.coeffs()) : q);
  return aa.axis() * aa.angle();
}

}  // namespace

SimWorld::SimWorld(SimConfig config) : config_(std::move(config)), rng_(config_.seed) {
  if (!(config_.tick_dt > 0.0)) throw Error(Errc::ConfigError, "tick_dt must be positive");
  if (!is_finite(config_.home)) throw Error(Errc::ConfigError, "home pose is not finite");
  config_.home = normalized(config_.home);
  robot_.ee_pose = config_.home;
  robot_.goal_pose = config_.home;
  robot_.gripper_width = std::clamp(config_.home_width, 0.0, kMaxGripperWidth);
  robot_.goal_width = robot_.gripper_width;
}

void SimWorld::go_to_pose(const Pose& goal) {
  if (!is_finite(goal) || goal.orientation.norm() < 1e-9) {
    throw Error(Errc::RejectedNonFinite, "goal pose is not finite");
  }
  robot_.goal_pose = normalized(goal);
}

void SimWorld::go_to_gripper(double width) {
  if (!std::isfinite(width)) throw Error(Errc::RejectedNonFinite, "goal width is not finite");
  const double clamped = std::clamp(width, 0.0, kMaxGripperWidth);
  if (clamped != width) ++stats_.width_clamps;
  robot_.goal_width = clamped;
}

double SimWorld::grip_width(const ObjectSpec& spec) { return 2.0 * spec.half_extents.minCoeff(); }

WorldObject* SimWorld::grasped_object() {
  for (auto& [key, obj] : objects_) {
    if (obj.grasped) return &obj;
  }
  return nullptr;
}

void SimWorld::move_end_effector(double dt) {
  const Pose before = robot_.ee_pose;
  Pose& ee = robot_.ee_pose;
  const Pose& goal = robot_.goal_pose;

  const Eigen::Vector3d delta = goal.position - ee.position;
  const double distance = delta.norm();
  const double max_step = config_.limits.max_linear_speed * dt;
  if (distance <= max_step) {
    ee.position = goal.position;
  } else {
    ee.position += delta * (max_step / distance);
  }

  const double angle = angular_distance(ee.orientation, goal.orientation);
  const double max_turn = config_.limits.max_angular_speed * dt;
  if (angle <= max_turn) {
    ee.orientation = goal.orientation;
  } else {
    ee.orientation = ee.orientation.slerp(max_turn / angle, goal.orientation).normalized();
  }

  robot_.ee_twist.linear = (ee.position - before.position) / dt;
  robot_.ee_twist.angular = rotation_vector(ee.orientation * before.orientation.conjugate()) / dt;
}

void SimWorld::resolve_grasp() {
  const double margin = config_.grasp.grip_margin;
  if (WorldObject* held = grasped_object()) {
    if (robot_.goal_width > grip_width(held->record.spec) + margin) {
      held->grasped = false;
      held->record.twist = robot_.ee_twist;
    }
    return;
  }

  const Eigen::Vector3d midpoint = robot_.ee_pose.position;
  WorldObject* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  for (auto& [key, obj] : objects_) {
    const double d = (obj.record.pose.position - midpoint).norm();
    if (d <= config_.grasp.grasp_radius && robot_.goal_width <= grip_width(obj.record.spec) - margin &&
        d < best_distance) {
      best = &obj;
      best_distance = d;
    }
  }
  if (best) {
    best->grasped = true;
    best->grasp_offset = compose(inverse(robot_.ee_pose), best->record.pose);
  }
}

void SimWorld::slew_gripper(double dt) {
  double target = robot_.goal_width;
  const WorldObject* held = grasped_object();
  if (held) target = std::max(target, grip_width(held->record.spec));

  const double max_change = config_.limits.gripper_speed * dt;
  const double change = std::clamp(target - robot_.gripper_width, -max_change, max_change);
  robot_.gripper_width = std::clamp(robot_.gripper_width + change, 0.0, kMaxGripperWidth);
  robot_.grip_engaged = held && robot_.goal_width < grip_width(held->record.spec);
}

void SimWorld::integrate_free_objects(double dt) {
  for (auto& [key, obj] : objects_) {
    ObjectRecord& r = obj.record;
    if (obj.grasped) {
      r.pose = compose(robot_.ee_pose, obj.grasp_offset);
      r.twist = robot_.ee_twist;
      continue;
    }
    r.pose.position += r.twist.linear * dt;
    const double rate = r.twist.angular.norm();
    if (rate > 0.0) {
      const Eigen::Quaterniond turn(Eigen::AngleAxisd(rate * dt, r.twist.angular / rate));
      r.pose.orientation = (turn * r.pose.orientation).normalized();
    }
    for (const auto& wall : config_.bounds.walls()) {
      const double excess = wall.normal.dot(r.pose.position) - wall.offset;
      if (excess > 0.0) {
        r.pose.position -= excess * wall.normal;
        const double outward = wall.normal.dot(r.twist.linear);
        if (outward > 0.0) r.twist.linear -= 2.0 * outward * wall.normal;
      }
    }
  }
}

SceneUpdateMessage SimWorld::step() {
  const double dt = config_.tick_dt;
  move_end_effector(dt);
  resolve_grasp();
  slew_gripper(dt);
  integrate_free_objects(dt);
  ++stats_.ticks;

  SceneUpdateMessage msg;
  msg.ee_pose = robot_.ee_pose;
  msg.gripper_width = robot_.gripper_width;
  msg.updates.reserve(objects_.size());
  for (const auto& [key, obj] : objects_) {
    if (pending_creates_.contains(key)) {
      msg.creates.push_back({key, obj.record.spec, obj.record.pose, obj.record.twist});
    } else {
      msg.updates.push_back({key, obj.record.pose, obj.record.twist});
    }
  }
  for (ObjectKey key : pending_deletes_) {
    if (!objects_.contains(key)) msg.deletes.push_back(key);
  }
  stats_.creates_emitted += msg.creates.size();
  stats_.deletes_emitted += msg.deletes.size();
  pending_creates_.clear();
  pending_deletes_.clear();
  return msg;
}

ObjectKey SimWorld::spawn_block(std::optional<ObjectSpec> spec, std::optional<Pose> pose,
                                std::optional<Twist> twist) {
  const SpawnRanges& ranges = config_.spawn;
  auto uniform = [this](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); };

  if (!spec) {
    ObjectSpec s;
    s.kind = ObjectKind::Block;
    s.half_extents.setConstant(ranges.half_extent_lo == ranges.half_extent_hi
                                   ? ranges.half_extent_lo
                                   : uniform(ranges.half_extent_lo, ranges.half_extent_hi));
    s.color = {uniform(0.0, 1.0), uniform(0.0, 1.0), uniform(0.0, 1.0), 1.0};
    spec = s;
  }
  if (!pose) {
    Pose p;
    bool inside = false;
    for (int attempt = 0; attempt < 1000 && !inside; ++attempt) {
      for (int i = 0; i < 3; ++i) p.position[i] = uniform(ranges.position_lo[i], ranges.position_hi[i]);
      inside = config_.bounds.contains(p.position);
    }
    if (!inside) throw Error(Errc::ConfigError, "spawn box does not intersect the containment bounds");
    // Uniform rotation (Shoemake).
    const double u1 = uniform(0.0, 1.0), u2 = uniform(0.0, 2.0 * std::numbers::pi),
                 u3 = uniform(0.0, 2.0 * std::numbers::pi);
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    p.orientation = Eigen::Quaterniond(a * std::cos(u2), a * std::sin(u2), b * std::cos(u3), b * std::sin(u3));
    pose = p;
  }
  if (!twist) {
    Twist t;
    for (int i = 0; i < 3; ++i) t.linear[i] = uniform(-ranges.max_linear_speed, ranges.max_linear_speed);
    for (int i = 0; i < 3; ++i) t.angular[i] = uniform(-ranges.max_angular_speed, ranges.max_angular_speed);
    twist = t;
  }

  const ObjectKey key{next_key_++};
  WorldObject obj;
  obj.record = ObjectRecord{key, *spec, normalized(*pose), *twist, 0};
  objects_.emplace(key, obj);
  pending_creates_.insert(key);
  pending_deletes_.erase(key);
  return key;
}

bool SimWorld::remove_object(ObjectKey key) {
  if (objects_.erase(key) == 0) return false;
  pending_creates_.erase(key);
  pending_deletes_.insert(key);
  return true;
}

void SimWorld::recover_unknown(std::span<const ObjectKey> unknown_keys) {
  for (ObjectKey key : unknown_keys) {
    if (objects_.contains(key)) {
      pending_creates_.insert(key);
    } else {
      pending_deletes_.insert(key);
    }
  }
}

void SimWorld::apply_goal_command(const GoalCommandMessage& msg) {
  go_to_pose(msg.goal_pose);
  go_to_gripper(msg.goal_gripper_width);

  std::set<ObjectKey> known(msg.known_keys.begin(), msg.known_keys.end());
  for (const auto& [key, obj] : objects_) {
    if (!known.contains(key)) pending_creates_.insert(key);
  }
  for (ObjectKey key : known) {
    if (!objects_.contains(key)) pending_deletes_.insert(key);
  }
  recover_unknown(msg.unknown_keys);
}

std::vector<ObjectKey> SimWorld::live_keys() const {
  std::vector<ObjectKey> keys;
  keys.reserve(objects_.size());
  for (const auto& [key, obj] : objects_) keys.push_back(key);
  return keys;
}

}  // namespace teleop
