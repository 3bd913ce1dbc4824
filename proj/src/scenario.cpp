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

#include "teleop/scenario.hpp"

#include <fstream>
#include <sstream>

#include "teleop/error.hpp"

namespace teleop {
namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(Errc::ConfigError, "scenario line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<ScenarioCommand> parse_scenario(const std::string& text) {
  std::vector<ScenarioCommand> commands;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::string verb;
    if (!(in >> verb)) continue;

    std::vector<double> args;
    double v = 0.0;
    while (in >> v) args.push_back(v);
    if (!in.eof()) bad(number, "bad argument");

    ScenarioCommand cmd;
    if (verb == "spawn") {
      cmd.kind = ScenarioCommand::Kind::Spawn;
      if (args.size() != 0 && args.size() != 3 && args.size() != 6 && args.size() != 7) {
        bad(number, "spawn takes 0, 3, 6 or 7 numbers");
      }
      if (args.size() >= 3) cmd.position = Eigen::Vector3d(args[0], args[1], args[2]);
      if (args.size() >= 6) cmd.velocity = Eigen::Vector3d(args[3], args[4], args[5]);
      if (args.size() == 7) {
        if (!(args[6] > 0.0)) bad(number, "half extent must be positive");
        cmd.half_extent = args[6];
      }
    } else if (verb == "delete") {
      if (args.size() != 1 || args[0] < 0) bad(number, "delete takes one key");
      cmd.kind = ScenarioCommand::Kind::Delete;
      cmd.key = static_cast<std::uint32_t>(args[0]);
    } else if (verb == "wait") {
      if (args.size() != 1 || !(args[0] >= 0.0)) bad(number, "wait takes a non-negative duration");
      cmd.kind = ScenarioCommand::Kind::Wait;
      cmd.seconds = args[0];
    } else {
      bad(number, "unknown command '" + verb + "'");
    }
    commands.push_back(cmd);
  }
  return commands;
}

std::vector<ScenarioCommand> load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

ScenarioRunner::ScenarioRunner(std::vector<ScenarioCommand> commands) : commands_(std::move(commands)) {}

void ScenarioRunner::advance(SimWorld& world, double now) {
  while (next_ < commands_.size() && now >= resume_at_) {
    const ScenarioCommand& cmd = commands_[next_++];
    switch (cmd.kind) {
      case ScenarioCommand::Kind::Wait:
        resume_at_ += cmd.seconds;
        break;
      case ScenarioCommand::Kind::Delete:
        world.remove_object(ObjectKey{cmd.key});
        break;
      case ScenarioCommand::Kind::Spawn: {
        std::optional<ObjectSpec> spec;
        if (cmd.half_extent) {
          ObjectSpec s;
          s.half_extents.setConstant(*cmd.half_extent);
          s.color = {0.8, 0.3, 0.2, 1.0};
          spec = s;
        }
        std::optional<Pose> pose;
        std::optional<Twist> twist;
        if (cmd.position) {
          pose = Pose{*cmd.position, Eigen::Quaterniond::Identity()};
          twist = Twist{cmd.velocity, Eigen::Vector3d::Zero()};
        }
        world.spawn_block(spec, pose, twist);
        break;
      }
    }
  }
}

}  // namespace teleop
