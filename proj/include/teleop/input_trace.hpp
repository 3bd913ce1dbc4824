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

#include <filesystem>
#include <string>
#include <vector>

#include "teleop/operator_session.hpp"

namespace teleop {

/// One line of a scripted operator trace:
///   time px py pz qw qx qy qz gripper_axis pause_edge
/// '#' starts a comment; times must be non-decreasing.
struct TraceEntry {
  double time = 0.0;
  Pose hand_pose;
  double gripper_axis = 0.0;
  bool pause_edge = false;
};

std::vector<TraceEntry> parse_input_trace(const std::string& text);
std::vector<TraceEntry> load_input_trace(const std::filesystem::path& path);
std::string format_input_trace(const std::vector<TraceEntry>& entries);

/// Replays a trace against session time. The input in effect at time t is
/// the last entry with time ≤ t; pause edges crossed since the previous call
/// are applied by parity.
class TraceCursor {
 public:
  TraceCursor(std::vector<TraceEntry> entries, OperatorInput initial = {});

  OperatorInput advance(double t);
  bool finished() const { return next_ == entries_.size(); }
  double end_time() const { return entries_.empty() ? 0.0 : entries_.back().time; }

 private:
  std::vector<TraceEntry> entries_;
  std::size_t next_ = 0;
  OperatorInput current_;
};

}  // namespace teleop
