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

#include "teleop/console_gateway.hpp"

#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "teleop/error.hpp"

namespace teleop {
namespace {

using nlohmann::json;

json pose_json(const Pose& p) {
  return {{"position", {p.position.x(), p.position.y(), p.position.z()}},
          {"orientation", {p.orientation.w(), p.orientation.x(), p.orientation.y(), p.orientation.z()}}};
}

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::ConfigError, what); }

double number(const json& j, const char* field) {
  if (!j.is_number()) malformed(std::string(field) + ": expected a number");
  return j.get<double>();
}

Pose pose_from(const json& j) {
  if (!j.is_object() || !j.contains("position") || !j.contains("orientation")) {
    malformed("pose: expected {position, orientation}");
  }
  const json& p = j["position"];
  const json& q = j["orientation"];
  if (!p.is_array() || p.size() != 3) malformed("pose.position: expected [x, y, z]");
  if (!q.is_array() || q.size() != 4) malformed("pose.orientation: expected [w, x, y, z]");
  Pose pose;
  pose.position = Eigen::Vector3d(number(p[0], "position"), number(p[1], "position"), number(p[2], "position"));
  pose.orientation = Eigen::Quaterniond(number(q[0], "orientation"), number(q[1], "orientation"),
                                        number(q[2], "orientation"), number(q[3], "orientation"));
  return pose;
}

}  // namespace

ConsoleFrame make_frame(const OperatorSession& session, std::span<const ObjectKey> echoed_unknown) {
  const SessionState& s = session.state();
  ConsoleFrame f;
  f.seq = s.tick;
  f.ee_pose = s.ee_pose;
  f.gripper_width = s.gripper_width;
  f.goal_pose = s.last_emitted_goal;
  f.goal_width = s.goal_width;
  f.hand_pose = s.hand_pose;
  f.paused = s.paused;
  f.opacity = s.opacity;
  for (const auto& [key, r] : session.registry().records()) {
    f.objects.push_back({key, r.spec.kind, r.pose, r.spec.half_extents, r.spec.color});
  }
  f.unknown_keys.assign(echoed_unknown.begin(), echoed_unknown.end());
  f.guard_violation = s.guard_violation;
  const FrequencySummary stats = session.stats().summary();
  f.avg_hz = stats.avg_hz;
  f.low1_hz = stats.low1_hz;
  return f;
}

std::string frame_to_json(const ConsoleFrame& f) {
  json objects = json::array();
  for (const auto& o : f.objects) {
    objects.push_back({{"key", to_underlying(o.key)},
                       {"kind", static_cast<unsigned>(o.kind)},
                       {"pose", pose_json(o.pose)},
                       {"half_extents", {o.half_extents.x(), o.half_extents.y(), o.half_extents.z()}},
                       {"color", o.color}});
  }
  json unknown = json::array();
  for (ObjectKey k : f.unknown_keys) unknown.push_back(to_underlying(k));
  json violation = nullptr;
  if (f.guard_violation) violation = {{"wall", f.guard_violation->wall}, {"vertex", f.guard_violation->vertex}};
  json doc = {
      {"type", "frame"},
      {"seq", f.seq},
      {"ee_pose", pose_json(f.ee_pose)},
      {"gripper_width", f.gripper_width},
      {"goal_pose", pose_json(f.goal_pose)},
      {"goal_width", f.goal_width},
      {"hand_pose", pose_json(f.hand_pose)},
      {"paused", f.paused},
      {"opacity", f.opacity},
      {"objects", objects},
      {"unknown_keys", unknown},
      {"guard_violation", violation},
      {"stats", {{"avg_hz", f.avg_hz}, {"low1_hz", f.low1_hz}}},
  };
  return doc.dump();
}

ConsoleFrame frame_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("frame is not valid JSON: ") + e.what());
  }
  try {
    ConsoleFrame f;
    f.seq = doc.at("seq").get<std::uint64_t>();
    f.ee_pose = pose_from(doc.at("ee_pose"));
    f.gripper_width = doc.at("gripper_width").get<double>();
    f.goal_pose = pose_from(doc.at("goal_pose"));
    f.goal_width = doc.at("goal_width").get<double>();
    f.hand_pose = pose_from(doc.at("hand_pose"));
    f.paused = doc.at("paused").get<bool>();
    f.opacity = doc.at("opacity").get<double>();
    for (const auto& o : doc.at("objects")) {
      ConsoleObject obj;
      obj.key = ObjectKey{o.at("key").get<std::uint32_t>()};
      obj.kind = static_cast<ObjectKind>(o.at("kind").get<unsigned>());
      obj.pose = pose_from(o.at("pose"));
      const auto h = o.at("half_extents").get<std::array<double, 3>>();
      obj.half_extents = Eigen::Vector3d(h[0], h[1], h[2]);
      obj.color = o.at("color").get<std::array<double, 4>>();
      f.objects.push_back(obj);
    }
    for (const auto& k : doc.at("unknown_keys")) f.unknown_keys.push_back(ObjectKey{k.get<std::uint32_t>()});
    const json& v = doc.at("guard_violation");
    if (!v.is_null()) f.guard_violation = WallViolation{v.at("wall").get<std::size_t>(), v.at("vertex").get<std::size_t>()};
    f.avg_hz = doc.at("stats").at("avg_hz").get<double>();
    f.low1_hz = doc.at("stats").at("low1_hz").get<double>();
    return f;
  } catch (const json::exception& e) {
    malformed(std::string("frame: ") + e.what());
  }
}

ConsoleCommand parse_command(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    malformed(std::string("command is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    malformed("command: expected an object with a string \"type\"");
  }
  const std::string type = doc["type"].get<std::string>();
  if (type == "hand_pose") {
    if (!doc.contains("pose")) malformed("hand_pose: missing \"pose\"");
    const Pose pose = pose_from(doc["pose"]);
    if (!is_finite(pose)) malformed("hand_pose: non-finite pose");
    return HandPoseCommand{pose};
  }
  if (type == "gripper_axis") {
    if (!doc.contains("value")) malformed("gripper_axis: missing \"value\"");
    const double v = number(doc["value"], "gripper_axis.value");
    if (!(v >= -1.0 && v <= 1.0)) malformed("gripper_axis: value outside [-1, 1]");
    return GripperAxisCommand{v};
  }
  if (type == "pause_toggle") return PauseToggleCommand{};
  if (type == "camera") return CameraCommand{};
  malformed("command: unknown type \"" + type + "\"");
}

ConsoleGateway::ConsoleGateway(OperatorInput initial, std::size_t ring_capacity)
    : capacity_(std::max<std::size_t>(ring_capacity, 1)), input_(initial) {
  input_.pause_pressed = false;
}

void ConsoleGateway::publish_frame(const OperatorSession& session, std::span<const ObjectKey> echoed_unknown) {
  if (closed_.load(std::memory_order_relaxed)) throw Error(Errc::ChannelClosed, "console gateway closed");
  if (!any_subscriber_.load(std::memory_order_relaxed)) return;
  publish_frame(make_frame(session, echoed_unknown));
}

void ConsoleGateway::publish_frame(const ConsoleFrame& frame) {
  std::string text = frame_to_json(frame);
  {
    std::lock_guard lock(mutex_);
    if (closed_) throw Error(Errc::ChannelClosed, "console gateway closed");
    if (last_published_ && frame.seq <= *last_published_) return;
    last_published_ = frame.seq;
    ring_.push_back({frame.seq, std::move(text)});
    while (ring_.size() > capacity_) ring_.pop_front();
  }
  frame_ready_.notify_all();
}

std::optional<OperatorInput> ConsoleGateway::poll_command() {
  std::lock_guard lock(mutex_);
  if (!pending_) return std::nullopt;
  if (pending_pose_) input_.hand_pose = *pending_pose_;
  if (pending_axis_) input_.gripper_axis = *pending_axis_;
  OperatorInput out = input_;
  out.pause_pressed = (pending_pauses_ % 2) == 1;
  pending_pose_.reset();
  pending_axis_.reset();
  pending_pauses_ = 0;
  pending_ = false;
  return out;
}

void ConsoleGateway::push_command(const ConsoleCommand& command) {
  std::lock_guard lock(mutex_);
  std::visit(
      [this](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, HandPoseCommand>) {
          pending_pose_ = c.pose;
          pending_ = true;
        } else if constexpr (std::is_same_v<T, GripperAxisCommand>) {
          pending_axis_ = c.value;
          pending_ = true;
        } else if constexpr (std::is_same_v<T, PauseToggleCommand>) {
          ++pending_pauses_;
          pending_ = true;
        }
      },
      command);
}

void ConsoleGateway::subscribe() {
  std::lock_guard lock(mutex_);
  ++subscribers_;
  any_subscriber_ = true;
}

void ConsoleGateway::unsubscribe() {
  std::lock_guard lock(mutex_);
  if (subscribers_ > 0) --subscribers_;
  any_subscriber_ = subscribers_ > 0;
}

std::size_t ConsoleGateway::subscribers() const {
  std::lock_guard lock(mutex_);
  return subscribers_;
}

std::vector<ConsoleGateway::Published> ConsoleGateway::wait_frames(std::uint64_t after_seq,
                                                                   std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  auto newer = [&] { return closed_ || (!ring_.empty() && ring_.back().seq > after_seq); };
  frame_ready_.wait_for(lock, timeout, newer);
  std::vector<Published> out;
  if (closed_) return out;
  for (const auto& p : ring_) {
    if (p.seq > after_seq) out.push_back(p);
  }
  return out;
}

void ConsoleGateway::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  frame_ready_.notify_all();
}

bool ConsoleGateway::closed() const { return closed_.load(); }

struct ConsoleServer::Impl {
  ConsoleGateway& gateway;
  WorkspaceConfig workspace;
  std::filesystem::path static_dir;
  httplib::Server server;
  std::thread thread;
  std::atomic<bool> running{false};

  Impl(ConsoleGateway& g, WorkspaceConfig w, std::filesystem::path dir)
      : gateway(g), workspace(std::move(w)), static_dir(std::move(dir)) {}

  void routes() {
    server.Get("/api/frames", [this](const httplib::Request&, httplib::Response& res) {
      gateway.subscribe();
      auto cursor = std::make_shared<std::uint64_t>(0);
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [this, cursor](std::size_t, httplib::DataSink& sink) {
            if (!running || gateway.closed()) {
              sink.done();
              return true;
            }
            auto frames = gateway.wait_frames(*cursor, std::chrono::milliseconds(250));
            if (frames.empty()) return sink.write(": keepalive\n\n", 13);
            for (const auto& f : frames) {
              const std::string event = "event: frame\ndata: " + f.json + "\n\n";
              if (!sink.write(event.data(), event.size())) return false;
              *cursor = f.seq;
            }
            return true;
          },
          [this](bool) { gateway.unsubscribe(); });
    });

    server.Post("/api/command", [this](const httplib::Request& req, httplib::Response& res) {
      std::istringstream lines(req.body);
      std::string line;
      std::vector<ConsoleCommand> commands;
      try {
        while (std::getline(lines, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          commands.push_back(parse_command(line));
        }
      } catch (const Error& e) {
        res.status = 400;
        res.set_content(e.what(), "text/plain");
        return;
      }
      for (const auto& c : commands) gateway.push_command(c);
      res.status = 204;
    });

    server.Get("/api/workspace", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(to_json(workspace), "application/json");
    });

    if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
      server.set_mount_point("/", static_dir.string());
    }
  }
};

ConsoleServer::ConsoleServer(ConsoleGateway& gateway, WorkspaceConfig workspace, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(gateway, std::move(workspace), std::move(static_dir))) {
  impl_->routes();
}

ConsoleServer::~ConsoleServer() { stop(); }

int ConsoleServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(Errc::TransportFailure, "console server cannot bind " + host + ":" + std::to_string(port));
  impl_->running = true;
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void ConsoleServer::stop() {
  if (!impl_ || !impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace teleop
