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
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "teleop/operator_session.hpp"

namespace teleop {

struct ConsoleObject {
  ObjectKey key{};
  ObjectKind kind = ObjectKind::Block;
  Pose pose;
  Eigen::Vector3d half_extents = Eigen::Vector3d::Zero();
  std::array<double, 4> color{};

  friend bool operator==(const ConsoleObject&, const ConsoleObject&) = default;
};

/// Snapshot of the session pushed to the browser console once per tick.
struct ConsoleFrame {
  std::uint64_t seq = 0;  // session tick
  Pose ee_pose;
  double gripper_width = 0.0;
  Pose goal_pose;
  double goal_width = 0.0;
  Pose hand_pose;
  bool paused = false;
  double opacity = 0.0;
  std::vector<ConsoleObject> objects;
  std::vector<ObjectKey> unknown_keys;  // echoed to the controller this tick
  std::optional<WallViolation> guard_violation;
  double avg_hz = 0.0;
  double low1_hz = 0.0;

  friend bool operator==(const ConsoleFrame&, const ConsoleFrame&) = default;
};

ConsoleFrame make_frame(const OperatorSession& session, std::span<const ObjectKey> echoed_unknown = {});
std::string frame_to_json(const ConsoleFrame& frame);
ConsoleFrame frame_from_json(const std::string& text);

struct HandPoseCommand {
  Pose pose;
};
struct GripperAxisCommand {
  double value = 0.0;
};
struct PauseToggleCommand {};
struct CameraCommand {};  // view-only; the session ignores it

using ConsoleCommand = std::variant<HandPoseCommand, GripperAxisCommand, PauseToggleCommand, CameraCommand>;

// Throws Error{ConfigError} on malformed input.
ConsoleCommand parse_command(const std::string& json_text);

/// Session-side half of the console channel. The session loop calls
/// publish_frame and poll_command; the network side calls push_command and
/// wait_frames. Outbound frames sit in a small latest-wins ring, so a slow
/// consumer sees gaps but never reordering. Inbound commands are folded into
/// a single pending input.
class ConsoleGateway {
 public:
  explicit ConsoleGateway(OperatorInput initial = {}, std::size_t ring_capacity = 8);

  /// No-op when no console is subscribed. Throws ChannelClosed after close().
  void publish_frame(const OperatorSession& session, std::span<const ObjectKey> echoed_unknown = {});
  void publish_frame(const ConsoleFrame& frame);

  /// Folds every command since the last poll: latest hand pose and axis win,
  /// pause toggles apply by parity. None when nothing arrived.
  std::optional<OperatorInput> poll_command();

  void push_command(const ConsoleCommand& command);

  void subscribe();
  void unsubscribe();
  std::size_t subscribers() const;

  struct Published {
    std::uint64_t seq;
    std::string json;
  };
  /// Frames newer than `after_seq`, oldest first; waits up to `timeout` for
  /// one to arrive. Returns empty on timeout or close.
  std::vector<Published> wait_frames(std::uint64_t after_seq, std::chrono::milliseconds timeout);

  void close();
  bool closed() const;

 private:
  mutable std::mutex mutex_;
  std::condition_variable frame_ready_;
  std::deque<Published> ring_;
  std::size_t capacity_;
  std::optional<std::uint64_t> last_published_;
  std::size_t subscribers_ = 0;
  std::atomic<bool> any_subscriber_{false};
  std::atomic<bool> closed_{false};

  OperatorInput input_;
  std::optional<Pose> pending_pose_;
  std::optional<double> pending_axis_;
  unsigned pending_pauses_ = 0;
  bool pending_ = false;
};

/// HTTP front end for a ConsoleGateway on localhost:
///   GET  /api/frames     Server-Sent Events, one `frame` event per ConsoleFrame
///   POST /api/command    newline-delimited JSON ConsoleCommands
///   GET  /api/workspace  walls and polytope for rendering
///   GET  /*              static console bundle (when a directory is given)
class ConsoleServer {
 public:
  ConsoleServer(ConsoleGateway& gateway, WorkspaceConfig workspace, std::filesystem::path static_dir = {});
  ~ConsoleServer();

  ConsoleServer(const ConsoleServer&) = delete;
  ConsoleServer& operator=(const ConsoleServer&) = delete;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port.
  int start(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace teleop
