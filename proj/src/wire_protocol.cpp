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

#include "teleop/wire_protocol.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <unordered_set>

#include "teleop/error.hpp"

namespace teleop::wire {
namespace {

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) u8(static_cast<std::uint8_t>(v >> shift));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
  void key(ObjectKey k) { u32(to_underlying(k)); }

  void pose(const Pose& p) {
    for (int i = 0; i < 3; ++i) f32(p.position[i]);
    f32(p.orientation.w());
    f32(p.orientation.x());
    f32(p.orientation.y());
    f32(p.orientation.z());
  }
  void twist(const Twist& t) {
    for (int i = 0; i < 3; ++i) f32(t.linear[i]);
    for (int i = 0; i < 3; ++i) f32(t.angular[i]);
  }
  void spec(const ObjectSpec& s) {
    u8(static_cast<std::uint8_t>(s.kind));
    for (int i = 0; i < 3; ++i) f32(s.half_extents[i]);
    for (double c : s.color) f32(c);
  }

  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8(const char* field) {
    need(1, field);
    return bytes_[pos_++];
  }
  std::uint16_t u16(const char* field) {
    need(2, field);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const char* field) {
    need(4, field);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f32(const char* field) {
    const float f = std::bit_cast<float>(u32(field));
    if (!std::isfinite(f)) throw Error(Errc::NonFiniteField, std::string(field) + " is not finite");
    return static_cast<double>(f);
  }
  ObjectKey key(const char* field) { return ObjectKey{u32(field)}; }

  Pose pose(const char* field) {
    Pose p;
    for (int i = 0; i < 3; ++i) p.position[i] = f32(field);
    const double w = f32(field);
    const double x = f32(field);
    const double y = f32(field);
    const double z = f32(field);
    p.orientation = Eigen::Quaterniond(w, x, y, z);
    const double deviation = std::abs(p.orientation.norm() - 1.0);
    if (deviation > kQuaternionRepairTolerance) {
      throw Error(Errc::BadQuaternion,
                  std::string(field) + " quaternion norm off by " + std::to_string(deviation));
    }
    if (deviation > kQuaternionUnitTolerance) p.orientation.normalize();
    return p;
  }
  Twist twist(const char* field) {
    Twist t;
    for (int i = 0; i < 3; ++i) t.linear[i] = f32(field);
    for (int i = 0; i < 3; ++i) t.angular[i] = f32(field);
    return t;
  }
  ObjectSpec spec(const char* field) {
    ObjectSpec s;
    s.kind = static_cast<ObjectKind>(u8(field));
    for (int i = 0; i < 3; ++i) s.half_extents[i] = f32(field);
    for (double& c : s.color) c = f32(field);
    return s;
  }

  void expect_end() const {
    if (pos_ != bytes_.size()) {
      throw Error(Errc::TrailingBytes,
                  std::to_string(bytes_.size() - pos_) + " bytes after end of message");
    }
  }

 private:
  void need(std::size_t n, const char* field) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(Errc::TruncatedMessage, std::string("input ends inside ") + field);
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void violation(const std::string& what) { throw Error(Errc::InvariantViolation, what); }

bool fits_f32(double v) { return std::isfinite(v) && std::isfinite(static_cast<float>(v)); }

void check_real(double v, const char* field) {
  if (!fits_f32(v)) violation(std::string(field) + " is not a finite binary32 value");
}

void check_pose(const Pose& p, const char* field) {
  for (int i = 0; i < 3; ++i) check_real(p.position[i], field);
  for (int i = 0; i < 4; ++i) check_real(p.orientation.coeffs()[i], field);
  if (std::abs(p.orientation.norm() - 1.0) > kQuaternionUnitTolerance) {
    violation(std::string(field) + " quaternion is not unit");
  }
}

void check_twist(const Twist& t, const char* field) {
  for (int i = 0; i < 3; ++i) {
    check_real(t.linear[i], field);
    check_real(t.angular[i], field);
  }
}

void check_width(double w, const char* field) {
  check_real(w, field);
  if (w < 0.0 || w > kMaxGripperWidth) violation(std::string(field) + " outside [0, 0.08] m");
}

void check_spec(const ObjectSpec& s) {
  for (int i = 0; i < 3; ++i) {
    check_real(s.half_extents[i], "object half extents");
    if (!(s.half_extents[i] > 0.0)) violation("object half extents must be positive");
  }
  for (double c : s.color) {
    check_real(c, "object color");
    if (c < 0.0 || c > 1.0) violation("object color outside [0, 1]");
  }
}

void check_disjoint(const SceneUpdateMessage& msg) {
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(msg.updates.size() + msg.creates.size() + msg.deletes.size());
  // A key may repeat inside one list but must not span two lists.
  std::unordered_set<std::uint32_t> in_list;
  auto scan = [&](auto&& keys, const char* list) {
    in_list.clear();
    for (ObjectKey k : keys) {
      const auto raw = to_underlying(k);
      if (in_list.insert(raw).second && !seen.insert(raw).second) {
        violation("key " + std::to_string(raw) + " appears in " + list + " and another list");
      }
    }
  };
  std::vector<ObjectKey> keys;
  keys.reserve(msg.updates.size());
  for (const auto& u : msg.updates) keys.push_back(u.key);
  scan(keys, "updates");
  keys.clear();
  for (const auto& c : msg.creates) keys.push_back(c.key);
  scan(keys, "creates");
  scan(msg.deletes, "deletes");
}

void check_size(std::size_t size) {
  if (size > kMaxDatagramBytes) {
    throw Error(Errc::OversizeMessage,
                "encoded size " + std::to_string(size) + " exceeds " + std::to_string(kMaxDatagramBytes));
  }
}

void write_header(ByteWriter& w, MessageType type, std::uint32_t seq) {
  w.u16(kMagic);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(type));
  w.u32(seq);
}

SceneUpdateMessage decode_scene(ByteReader& r, std::uint32_t seq) {
  SceneUpdateMessage msg;
  msg.seq = seq;
  msg.ee_pose = r.pose("ee_pose");
  msg.gripper_width = r.f32("gripper_width");
  const std::uint16_t updates = r.u16("update count");
  msg.updates.reserve(updates);
  for (std::uint16_t i = 0; i < updates; ++i) {
    ObjectUpdate u;
    u.key = r.key("update key");
    u.pose = r.pose("update pose");
    u.twist = r.twist("update twist");
    msg.updates.push_back(u);
  }
  const std::uint16_t creates = r.u16("create count");
  msg.creates.reserve(creates);
  for (std::uint16_t i = 0; i < creates; ++i) {
    ObjectCreate c;
    c.key = r.key("create key");
    c.spec = r.spec("create spec");
    c.pose = r.pose("create pose");
    c.twist = r.twist("create twist");
    msg.creates.push_back(c);
  }
  const std::uint16_t deletes = r.u16("delete count");
  msg.deletes.reserve(deletes);
  for (std::uint16_t i = 0; i < deletes; ++i) msg.deletes.push_back(r.key("delete key"));
  r.expect_end();
  validate(msg);
  return msg;
}

GoalCommandMessage decode_goal(ByteReader& r, std::uint32_t seq) {
  GoalCommandMessage msg;
  msg.seq = seq;
  const std::uint8_t paused = r.u8("paused flag");
  msg.goal_pose = r.pose("goal_pose");
  msg.goal_gripper_width = r.f32("goal_gripper_width");
  const std::uint16_t known = r.u16("known key count");
  msg.known_keys.reserve(known);
  for (std::uint16_t i = 0; i < known; ++i) msg.known_keys.push_back(r.key("known key"));
  const std::uint16_t unknown = r.u16("unknown key count");
  msg.unknown_keys.reserve(unknown);
  for (std::uint16_t i = 0; i < unknown; ++i) msg.unknown_keys.push_back(r.key("unknown key"));
  r.expect_end();
  if (paused > 1) violation("paused flag must be 0 or 1");
  msg.paused = paused == 1;
  validate(msg);
  return msg;
}

}  // namespace

std::size_t encoded_size(const SceneUpdateMessage& msg) {
  return scene_update_size(msg.updates.size(), msg.creates.size(), msg.deletes.size());
}

std::size_t encoded_size(const GoalCommandMessage& msg) {
  return goal_command_size(msg.known_keys.size(), msg.unknown_keys.size());
}

void validate(const SceneUpdateMessage& msg) {
  check_pose(msg.ee_pose, "ee_pose");
  check_width(msg.gripper_width, "gripper_width");
  for (const auto& u : msg.updates) {
    check_pose(u.pose, "update pose");
    check_twist(u.twist, "update twist");
  }
  for (const auto& c : msg.creates) {
    check_spec(c.spec);
    check_pose(c.pose, "create pose");
    check_twist(c.twist, "create twist");
  }
  check_disjoint(msg);
}

void validate(const GoalCommandMessage& msg) {
  check_pose(msg.goal_pose, "goal_pose");
  check_width(msg.goal_gripper_width, "goal_gripper_width");
}

std::vector<std::uint8_t> encode(const SceneUpdateMessage& msg) {
  const std::size_t size = encoded_size(msg);
  check_size(size);
  validate(msg);

  ByteWriter w(size);
  write_header(w, MessageType::SceneUpdate, msg.seq);
  w.pose(msg.ee_pose);
  w.f32(msg.gripper_width);
  w.u16(static_cast<std::uint16_t>(msg.updates.size()));
  for (const auto& u : msg.updates) {
    w.key(u.key);
    w.pose(u.pose);
    w.twist(u.twist);
  }
  w.u16(static_cast<std::uint16_t>(msg.creates.size()));
  for (const auto& c : msg.creates) {
    w.key(c.key);
    w.spec(c.spec);
    w.pose(c.pose);
    w.twist(c.twist);
  }
  w.u16(static_cast<std::uint16_t>(msg.deletes.size()));
  for (ObjectKey k : msg.deletes) w.key(k);
  return std::move(w).take();
}

std::vector<std::uint8_t> encode(const GoalCommandMessage& msg) {
  const std::size_t size = encoded_size(msg);
  check_size(size);
  validate(msg);

  ByteWriter w(size);
  write_header(w, MessageType::GoalCommand, msg.seq);
  w.u8(msg.paused ? 1 : 0);
  w.pose(msg.goal_pose);
  w.f32(msg.goal_gripper_width);
  w.u16(static_cast<std::uint16_t>(msg.known_keys.size()));
  for (ObjectKey k : msg.known_keys) w.key(k);
  w.u16(static_cast<std::uint16_t>(msg.unknown_keys.size()));
  for (ObjectKey k : msg.unknown_keys) w.key(k);
  return std::move(w).take();
}

std::vector<std::uint8_t> encode(const Message& msg) {
  return std::visit([](const auto& m) { return encode(m); }, msg);
}

Message decode(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.u16("magic") != kMagic) throw Error(Errc::BadMagic, "magic is not 0x5442");
  if (const auto version = r.u8("version"); version != kVersion) {
    throw Error(Errc::BadVersion, "version " + std::to_string(version) + " is not supported");
  }
  const std::uint8_t type = r.u8("type");
  if (type != static_cast<std::uint8_t>(MessageType::SceneUpdate) &&
      type != static_cast<std::uint8_t>(MessageType::GoalCommand)) {
    throw Error(Errc::UnknownType, "message type " + std::to_string(type));
  }
  const std::uint32_t seq = r.u32("seq");
  if (type == static_cast<std::uint8_t>(MessageType::SceneUpdate)) return decode_scene(r, seq);
  return decode_goal(r, seq);
}

}  // namespace teleop::wire
