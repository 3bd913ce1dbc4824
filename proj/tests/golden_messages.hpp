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

#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "teleop/wire_protocol.hpp"
#include "test_support.hpp"

namespace teleop::testing {

// The messages behind protocol/golden/*.bin, rebuilt from their sidecars.

inline GoalCommandMessage golden_goal_empty() { return {}; }

inline SceneUpdateMessage golden_scene_one_update() {
  SceneUpdateMessage msg;
  msg.seq = 7;
  msg.ee_pose = Pose::from_position(0.5, 0.0, 0.25);
  msg.gripper_width = f32(0.04);
  ObjectUpdate u;
  u.key = ObjectKey{3};
  u.pose.position = Eigen::Vector3d(0.25, -0.125, 0.5);
  u.pose.orientation = Eigen::Quaterniond(0, 0, 0, 1);
  u.twist.linear = Eigen::Vector3d(f32(0.1), 0, 0);
  u.twist.angular = Eigen::Vector3d(0, 0, 0.5);
  msg.updates.push_back(u);
  return msg;
}

inline SceneUpdateMessage golden_scene_create_delete() {
  SceneUpdateMessage msg;
  msg.seq = 0x01020304;
  msg.ee_pose = Pose::from_position(f32(0.4), 0.0, f32(0.3));
  msg.gripper_width = f32(0.08);
  ObjectCreate c;
  c.key = ObjectKey{42};
  c.spec.half_extents.setConstant(f32(0.02));
  c.spec.color = {1.0, 0.5, 0.0, 1.0};
  c.pose = Pose::from_position(f32(0.3), f32(0.1), f32(0.05));
  msg.creates.push_back(c);
  msg.deletes = {ObjectKey{9}, ObjectKey{10}};
  return msg;
}

inline GoalCommandMessage golden_goal_paused_keys() {
  GoalCommandMessage msg;
  msg.seq = 255;
  msg.paused = true;
  msg.goal_pose.position = Eigen::Vector3d(0.5, -0.25, 0.375);
  msg.goal_pose.orientation = Eigen::Quaterniond(0, 1, 0, 0);
  msg.goal_gripper_width = 0.0625;
  msg.known_keys = {ObjectKey{1}, ObjectKey{2}, ObjectKey{300}};
  msg.unknown_keys = {ObjectKey{77}};
  return msg;
}

struct GoldenCase {
  std::string file;
  Message message;
};

inline std::vector<GoldenCase> golden_corpus() {
  return {
      {"goal_empty.bin", golden_goal_empty()},
      {"scene_one_update.bin", golden_scene_one_update()},
      {"scene_create_delete.bin", golden_scene_create_delete()},
      {"goal_paused_keys.bin", golden_goal_paused_keys()},
  };
}

inline std::vector<std::uint8_t> read_golden(const std::string& name) {
  std::ifstream in(std::string(TELEOP_GOLDEN_DIR) + "/" + name, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace teleop::testing
