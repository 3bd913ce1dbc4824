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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "teleop/geometry.hpp"

namespace teleop {

/// Key identifying one replicated scene object for the lifetime of a session.
enum class ObjectKey : std::uint32_t {};

constexpr std::uint32_t to_underlying(ObjectKey key) { return static_cast<std::uint32_t>(key); }

/// Object type tag. Only Block is defined; other values are reserved and
/// carried through the protocol untouched.
enum class ObjectKind : std::uint8_t { Block = 0 };

// Franka parallel-plate gripper span.
inline constexpr double kMaxGripperWidth = 0.08;

struct ObjectSpec {
  ObjectKind kind = ObjectKind::Block;
  Eigen::Vector3d half_extents = Eigen::Vector3d::Constant(0.02);
  std::array<double, 4> color{1.0, 1.0, 1.0, 1.0};  // RGBA in [0, 1]

  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct ObjectUpdate {
  ObjectKey key{};
  Pose pose;
  Twist twist;

  friend bool operator==(const ObjectUpdate&, const ObjectUpdate&) = default;
};

struct ObjectCreate {
  ObjectKey key{};
  ObjectSpec spec;
  Pose pose;
  Twist twist;

  friend bool operator==(const ObjectCreate&, const ObjectCreate&) = default;
};

/// Controller → client: end-effector state plus object lifecycle commands.
struct SceneUpdateMessage {
  std::uint32_t seq = 0;
  Pose ee_pose;
  double gripper_width = 0.0;
  std::vector<ObjectUpdate> updates;
  std::vector<ObjectCreate> creates;
  std::vector<ObjectKey> deletes;

  friend bool operator==(const SceneUpdateMessage&, const SceneUpdateMessage&) = default;
};

/// Client → controller: operator goal plus the client's view of the scene keys.
struct GoalCommandMessage {
  std::uint32_t seq = 0;
  bool paused = false;
  Pose goal_pose;
  double goal_gripper_width = 0.0;
  std::vector<ObjectKey> known_keys;
  std::vector<ObjectKey> unknown_keys;

  friend bool operator==(const GoalCommandMessage&, const GoalCommandMessage&) = default;
};

using Message = std::variant<SceneUpdateMessage, GoalCommandMessage>;

namespace wire {

inline constexpr std::uint16_t kMagic = 0x5442;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kMaxDatagramBytes = 65507;

enum class MessageType : std::uint8_t { SceneUpdate = 0x01, GoalCommand = 0x02 };

// Fixed layout sizes, all little-endian, reals as IEEE-754 binary32.
inline constexpr std::size_t kHeaderBytes = 8;       // magic u16, version u8, type u8, seq u32
inline constexpr std::size_t kPoseBytes = 28;        // position 3×f32, quaternion w,x,y,z 4×f32
inline constexpr std::size_t kTwistBytes = 24;       // linear 3×f32, angular 3×f32
inline constexpr std::size_t kSpecBytes = 29;        // kind u8, half extents 3×f32, rgba 4×f32
inline constexpr std::size_t kCountBytes = 2;
inline constexpr std::size_t kKeyBytes = 4;
inline constexpr std::size_t kUpdateEntryBytes = kKeyBytes + kPoseBytes + kTwistBytes;               // 56
inline constexpr std::size_t kCreateEntryBytes = kKeyBytes + kSpecBytes + kPoseBytes + kTwistBytes;  // 85
inline constexpr std::size_t kSceneBaseBytes = kHeaderBytes + kPoseBytes + 4 + 3 * kCountBytes;      // 46
inline constexpr std::size_t kGoalBaseBytes = kHeaderBytes + 1 + kPoseBytes + 4 + 2 * kCountBytes;   // 45

// Quaternions whose norm deviates from 1 by more than this are rejected on
// decode; smaller deviations are repaired by renormalization.
inline constexpr double kQuaternionRepairTolerance = 1e-3;
// Norm deviation accepted as already-unit (encode precondition, decode no-op).
inline constexpr double kQuaternionUnitTolerance = 1e-6;

/// Encoded length from the layout: 46 + 56·updates + 85·creates + 4·deletes.
constexpr std::size_t scene_update_size(std::size_t updates, std::size_t creates, std::size_t deletes) {
  return kSceneBaseBytes + kUpdateEntryBytes * updates + kCreateEntryBytes * creates + kKeyBytes * deletes;
}

/// Encoded length from the layout: 45 + 4·(known + unknown).
constexpr std::size_t goal_command_size(std::size_t known, std::size_t unknown) {
  return kGoalBaseBytes + kKeyBytes * (known + unknown);
}

std::size_t encoded_size(const SceneUpdateMessage& msg);
std::size_t encoded_size(const GoalCommandMessage& msg);

// Throws Error{InvariantViolation} naming the first violated invariant.
void validate(const SceneUpdateMessage& msg);
void validate(const GoalCommandMessage& msg);

std::vector<std::uint8_t> encode(const SceneUpdateMessage& msg);
std::vector<std::uint8_t> encode(const GoalCommandMessage& msg);
std::vector<std::uint8_t> encode(const Message& msg);

/// Total over arbitrary input: returns a valid message or throws Error with
/// BadMagic, BadVersion, UnknownType, TruncatedMessage, TrailingBytes,
/// NonFiniteField, BadQuaternion or InvariantViolation.
Message decode(std::span<const std::uint8_t> bytes);

}  // namespace wire
}  // namespace teleop
