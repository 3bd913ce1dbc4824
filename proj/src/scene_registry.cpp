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

#include "teleop/scene_registry.hpp"

#include <charconv>
#include <sstream>

#include "teleop/error.hpp"

namespace teleop {

ApplyReport SceneRegistry::apply_scene_update(const SceneUpdateMessage& msg) {
  ApplyReport report;

  for (ObjectKey key : msg.deletes) {
    if (records_.erase(key) > 0) {
      ++report.deleted;
    } else {
      ++report.skipped_delete;
    }
  }

  for (const auto& create : msg.creates) {
    ObjectRecord record{create.key, create.spec, create.pose, create.twist, msg.seq};
    auto [it, inserted] = records_.try_emplace(create.key, record);
    if (inserted) {
      ++report.created;
    } else {
      it->second = record;
      ++report.replaced;
    }
  }

  for (const auto& update : msg.updates) {
    auto it = records_.find(update.key);
    if (it == records_.end()) {
      ++report.skipped_unknown;
      if (unknown_set_.insert(to_underlying(update.key)).second) unknown_order_.push_back(update.key);
      continue;
    }
    it->second.pose = update.pose;
    it->second.twist = update.twist;
    it->second.last_update_seq = msg.seq;
    ++report.updated;
  }
  return report;
}

std::vector<ObjectKey> SceneRegistry::drain_unknown() {
  std::vector<ObjectKey> out;
  out.swap(unknown_order_);
  unknown_set_.clear();
  return out;
}

std::vector<ObjectKey> SceneRegistry::known_keys() const {
  std::vector<ObjectKey> keys;
  keys.reserve(records_.size());
  for (const auto& [key, record] : records_) keys.push_back(key);
  return keys;
}

const ObjectRecord* SceneRegistry::find(ObjectKey key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

namespace {

void put(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.push_back(' ');
  out.append(buf, end);
}

double take(std::istringstream& in, std::size_t line) {
  std::string token;
  if (!(in >> token)) throw Error(Errc::ConfigError, "snapshot line " + std::to_string(line) + ": too few fields");
  double v = 0.0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw Error(Errc::ConfigError, "snapshot line " + std::to_string(line) + ": bad number '" + token + "'");
  }
  return v;
}

}  // namespace

std::string export_snapshot(const SceneRegistry& registry) {
  std::string out;
  for (const auto& [key, r] : registry.records()) {
    out += std::to_string(to_underlying(key));
    out += ' ';
    out += std::to_string(static_cast<unsigned>(r.spec.kind));
    for (int i = 0; i < 3; ++i) put(out, r.pose.position[i]);
    put(out, r.pose.orientation.w());
    put(out, r.pose.orientation.x());
    put(out, r.pose.orientation.y());
    put(out, r.pose.orientation.z());
    for (int i = 0; i < 3; ++i) put(out, r.twist.linear[i]);
    for (int i = 0; i < 3; ++i) put(out, r.twist.angular[i]);
    for (double c : r.spec.color) put(out, c);
    for (int i = 0; i < 3; ++i) put(out, r.spec.half_extents[i]);
    out += '\n';
  }
  return out;
}

std::vector<ObjectRecord> parse_snapshot(const std::string& text) {
  std::vector<ObjectRecord> records;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.empty()) continue;
    std::istringstream in(line);
    ObjectRecord r;
    r.key = ObjectKey{static_cast<std::uint32_t>(take(in, number))};
    r.spec.kind = static_cast<ObjectKind>(static_cast<std::uint8_t>(take(in, number)));
    for (int i = 0; i < 3; ++i) r.pose.position[i] = take(in, number);
    const double w = take(in, number), x = take(in, number), y = take(in, number), z = take(in, number);
    r.pose.orientation = Eigen::Quaterniond(w, x, y, z);
    for (int i = 0; i < 3; ++i) r.twist.linear[i] = take(in, number);
    for (int i = 0; i < 3; ++i) r.twist.angular[i] = take(in, number);
    for (double& c : r.spec.color) c = take(in, number);
    for (int i = 0; i < 3; ++i) r.spec.half_extents[i] = take(in, number);
    records.push_back(r);
  }
  return records;
}

}  // namespace teleop
