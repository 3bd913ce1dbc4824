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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace teleop {

/// Rigid-body pose in the robot base frame: position in meters and a unit
/// quaternion orientation.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  static Pose identity() { return {}; }
  static Pose from_position(double x, double y, double z) {
    return {Eigen::Vector3d(x, y, z), Eigen::Quaterniond::Identity()};
  }

  // Exact component-wise comparison, including the quaternion sign.
  friend bool operator==(const Pose& a, const Pose& b) {
    return a.position == b.position && a.orientation.coeffs() == b.orientation.coeffs();
  }
};

/// Linear (m/s) and angular (rad/s) velocity, both in the world frame.
struct Twist {
  Eigen::Vector3d linear = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular = Eigen::Vector3d::Zero();

  friend bool operator==(const Twist& a, const Twist& b) {
    return a.linear == b.linear && a.angular == b.angular;
  }
};

bool is_finite(const Pose& pose);
bool is_finite(const Twist& twist);

// a ∘ b: apply b in the frame of a.
Pose compose(const Pose& a, const Pose& b);
Pose inverse(const Pose& pose);

// Maps a point expressed in the pose's body frame into the world frame.
Eigen::Vector3d transform_point(const Pose& pose, const Eigen::Vector3d& point);

// Smallest rotation angle (radians, in [0, pi]) taking a to b.
double angular_distance(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

// Normalizes the orientation; returns the pose unchanged when it is already unit.
Pose normalized(const Pose& pose);

}  // namespace teleop
