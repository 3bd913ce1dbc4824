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
#include <optional>
#include <string>
#include <vector>

#include "teleop/sim_world.hpp"

namespace teleop {

/// Controller demo script, one command per line:
///   spawn                              random block
///   spawn x y z [vx vy vz [half]]      block at a position, optional velocity and half-extent
///   delete KEY
///   wait SECONDS
/// Commands run in order; `wait` delays everything after it.
struct ScenarioCommand {
  enum class Kind { Spawn, Delete, Wait };
  Kind kind = Kind::Spawn;
  std::optional<Eigen::Vector3d> position;
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  std::optional<double> half_extent;
  std::uint32_t key = 0;
  double seconds = 0.0;
};

std::vector<ScenarioCommand> parse_scenario(const std::string& text);
std::vector<ScenarioCommand> load_scenario(const std::filesystem::path& path);

class ScenarioRunner {
 public:
  explicit ScenarioRunner(std::vector<ScenarioCommand> commands);

  // Executes every command due at or before `now` (seconds since start).
  void advance(SimWorld& world, double now);
  bool finished() const { return next_ == commands_.size(); }

 private:
  std::vector<ScenarioCommand> commands_;
  std::size_t next_ = 0;
  double resume_at_ = 0.0;
};

}  // namespace teleop
