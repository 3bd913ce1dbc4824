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

#include "teleop/operator_session.hpp"

#include <algorithm>
#include <chrono>

#include "teleop/error.hpp"

namespace teleop {

OperatorSession::OperatorSession(SessionConfig config)
    : config_(std::move(config)), stats_(config_.stats_capacity) {
  if (!(config_.tick_rate > 0.0)) throw Error(Errc::ConfigError, "session tick rate must be positive");
  if (!(config_.d_full > 0.0)) throw Error(Errc::ConfigError, "d_full must be positive");
  const Pose initial = normalized(config_.initial_goal);
  if (!pose_allowed(config_.workspace.polytope, config_.workspace.walls, initial)) {
    throw Error(Errc::ConfigError, "initial goal violates the workspace walls");
  }
  state_.last_emitted_goal = initial;
  state_.hand_pose = initial;
  state_.ee_pose = initial;
  state_.goal_width = std::clamp(config_.initial_width, 0.0, kMaxGripperWidth);
  state_.gripper_width = state_.goal_width;
}

bool OperatorSession::toggle_pause() {
  state_.paused = !state_.paused;
  return state_.paused;
}

double OperatorSession::update_goal_width(double gripper_axis, double dt) {
  const double axis = std::clamp(gripper_axis, -1.0, 1.0);
  state_.goal_width = std::clamp(state_.goal_width + axis * config_.width_rate * dt, 0.0, kMaxGripperWidth);
  return state_.goal_width;
}

double OperatorSession::compute_opacity(const Pose& hand_pose, const Pose& ee_pose) const {
  if (state_.paused) return 1.0;
  const double distance = (hand_pose.position - ee_pose.position).norm();
  return std::clamp(distance / config_.d_full, 0.0, 1.0);
}

GoalCommandMessage OperatorSession::tick(const OperatorInput& input,
                                         const std::optional<SceneUpdateMessage>& incoming, double now) {
  if (incoming) {
    last_apply_ = registry_.apply_scene_update(*incoming);
    state_.ee_pose = incoming->ee_pose;
    state_.gripper_width = incoming->gripper_width;
  } else {
    last_apply_ = {};
  }

  if (input.pause_pressed) toggle_pause();
  state_.hand_pose = input.hand_pose;

  if (!state_.paused) {
    GuardVerdict verdict;
    state_.last_emitted_goal = gate_goal(state_.last_emitted_goal, normalized(input.hand_pose),
                                         config_.workspace.polytope, config_.workspace.walls, &verdict);
    state_.guard_violation = verdict.violation;
    update_goal_width(input.gripper_axis, 1.0 / config_.tick_rate);
  } else {
    state_.guard_violation.reset();
  }
  state_.opacity = compute_opacity(input.hand_pose, state_.ee_pose);

  GoalCommandMessage msg;
  msg.paused = state_.paused;
  msg.goal_pose = state_.last_emitted_goal;
  msg.goal_gripper_width = state_.goal_width;
  msg.known_keys = registry_.known_keys();
  msg.unknown_keys = registry_.drain_unknown();

  stats_.record(now);
  ++state_.tick;
  return msg;
}

GoalCommandMessage OperatorSession::tick(const OperatorInput& input,
                                         const std::optional<SceneUpdateMessage>& incoming) {
  const auto now = std::chrono::steady_clock::now().time_since_epoch();
  return tick(input, incoming, std::chrono::duration<double>(now).count());
}

}  // namespace teleop
