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

#include "teleop/input_trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "teleop/error.hpp"

namespace teleop {
namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

std::vector<TraceEntry> parse_input_trace(const std::string& text) {
  std::vector<TraceEntry> entries;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    std::istringstream in(strip_comment(line));
    std::vector<double> fields;
    std::string token;
    while (in >> token) {
      double v = 0.0;
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || end != token.data() + token.size()) {
        throw Error(Errc::ConfigError, "trace line " + std::to_string(number) + ": bad number '" + token + "'");
      }
      fields.push_back(v);
    }
    if (fields.empty()) continue;
    if (fields.size() != 10) {
      throw Error(Errc::ConfigError, "trace line " + std::to_string(number) + ": expected 10 fields, got " +
                                         std::to_string(fields.size()));
    }
    TraceEntry e;
    e.time = fields[0];
    e.hand_pose.position = Eigen::Vector3d(fields[1], fields[2], fields[3]);
    e.hand_pose.orientation = Eigen::Quaterniond(fields[4], fields[5], fields[6], fields[7]);
    e.gripper_axis = fields[8];
    e.pause_edge = fields[9] != 0.0;
    if (!entries.empty() && e.time < entries.back().time) {
      throw Error(Errc::ConfigError, "trace line " + std::to_string(number) + ": time goes backwards");
    }
    entries.push_back(e);
  }
  return entries;
}

std::vector<TraceEntry> load_input_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_input_trace(buffer.str());
}

std::string format_input_trace(const std::vector<TraceEntry>& entries) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& e : entries) {
    const auto& p = e.hand_pose.position;
    const auto& q = e.hand_pose.orientation;
    out << e.time << ' ' << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << q.w() << ' ' << q.x() << ' '
        << q.y() << ' ' << q.z() << ' ' << e.gripper_axis << ' ' << (e.pause_edge ? 1 : 0) << '\n';
  }
  return out.str();
}

TraceCursor::TraceCursor(std::vector<TraceEntry> entries, OperatorInput initial)
    : entries_(std::move(entries)), current_(initial) {
  current_.pause_pressed = false;
}

OperatorInput TraceCursor::advance(double t) {
  bool toggled = false;
  while (next_ < entries_.size() && entries_[next_].time <= t) {
    const TraceEntry& e = entries_[next_++];
    current_.hand_pose = e.hand_pose;
    current_.gripper_axis = e.gripper_axis;
    if (e.pause_edge) toggled = !toggled;
  }
  OperatorInput out = current_;
  out.pause_pressed = toggled;
  return out;
}

}  // namespace teleop
