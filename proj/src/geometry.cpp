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

#include "teleop/geometry.hpp"

#include <cmath>

namespace teleop {

bool is_finite(const Pose& pose) {
  return pose.position.allFinite() && pose.orientation.coeffs().allFinite();
}

bool is_finite(const Twist& twist) {
  return twist.linear.allFinite() && twist.angular.allFinite();
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.position + a.orientation * b.position, a.orientation * b.orientation};
}

Pose inverse(const Pose& pose) {
  const Eigen::Quaterniond inv = pose.orientation.conjugate();
  return {-(inv * pose.position), inv};
}

Eigen::Vector3d transform_point(const Pose& pose, const Eigen::Vector3d& point) {
  return pose.orientation * point + pose.position;
}

double angular_distance(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const Eigen::Quaterniond delta = a.conjugate() * b;
  return 2.0 * std::atan2(delta.vec().norm(), std::abs(delta.w()));
}

Pose normalized(const Pose& pose) {
  Pose out = pose;
  out.orientation.normalize();
  return out;
}

}  // namespace teleop
