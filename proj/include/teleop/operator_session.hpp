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
#include <optional>

#include "teleop/scene_registry.hpp"
#include "teleop/tick_stats.hpp"
#include "teleop/wire_protocol.hpp"
#include "teleop/workspace_config.hpp"

namespace teleop {

struct SessionConfig {
  double tick_rate = 72.0;   // Hz
  double d_full = 0.10;      // m, hand-to-ee distance at which the hand cursor is fully opaque
  double width_rate = 0.08;  // m/s at full joystick deflection
  Pose initial_goal = Pose::from_position(0.4, 0.0, 0.3);
  double initial_width = kMaxGripperWidth;
  WorkspaceConfig workspace;
  std::size_t stats_capacity = 512;
};

/// One sample of operator input. pause_pressed is an edge, not a level.
struct OperatorInput {
  Pose hand_pose = Pose::from_position(0.4, 0.0, 0.3);
  double gripper_axis = 0.0;  // −1 closes, +1 opens
  bool pause_pressed = false;

  friend bool operator==(const OperatorInput&, const OperatorInput&) = default;
};

struct SessionState {
  bool paused = false;
  Pose last_emitted_goal;
  double goal_width = 0.0;
  Pose hand_pose;
  double opacity = 0.0;
  Pose ee_pose;                 // latest reported by the controller
  double gripper_width = 0.0;   // latest reported by the controller
  std::optional<WallViolation> guard_violation;
  std::uint64_t tick = 0;
};

/// Client-side state machine: folds scene updates into the registry and
/// turns operator input into goal commands, applying pause, wall gating and
/// the goal-gripper rate control.
class OperatorSession {
 public:
  explicit OperatorSession(SessionConfig config = {});

  bool toggle_pause();
  double update_goal_width(double gripper_axis, double dt);
  double compute_opacity(const Pose& hand_pose, const Pose& ee_pose) const;

  /// One session frame. `now` is the tick timestamp in seconds, recorded
  /// into the timing ring; the overload without it uses the steady clock.
  GoalCommandMessage tick(const OperatorInput& input, const std::optional<SceneUpdateMessage>& incoming,
                          double now);
  GoalCommandMessage tick(const OperatorInput& input, const std::optional<SceneUpdateMessage>& incoming);

  const SessionState& state() const { return state_; }
  const SceneRegistry& registry() const { return registry_; }
  const TickStats& stats() const { return stats_; }
  const SessionConfig& config() const { return config_; }
  const ApplyReport& last_apply() const { return last_apply_; }

 private:
  SessionConfig config_;
  SessionState state_;
  SceneRegistry registry_;
  TickStats stats_;
  ApplyReport last_apply_;
};

}  // namespace teleop
