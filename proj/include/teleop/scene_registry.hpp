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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "teleop/wire_protocol.hpp"

namespace teleop {

struct ObjectRecord {
  ObjectKey key{};
  ObjectSpec spec;
  Pose pose;
  Twist twist;
  std::uint32_t last_update_seq = 0;

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct ApplyReport {
  std::size_t created = 0;
  std::size_t updated = 0;
  std::size_t deleted = 0;
  std::size_t skipped_unknown = 0;  // updates for keys with no record
  std::size_t skipped_delete = 0;   // deletes for keys with no record
  std::size_t replaced = 0;         // creates that replaced an existing record

  friend bool operator==(const ApplyReport&, const ApplyReport&) = default;
};

/// Client-side store of live scene objects.
///
/// Lifecycle rules for one scene update, applied in the order
/// deletes → creates → updates:
///   - a delete of an absent key is a counted no-op;
///   - a create for a present key replaces the record (old one deleted first);
///   - an update for an absent key is skipped and the key remembered as
///     unknown until the next drain_unknown().
class SceneRegistry {
 public:
  ApplyReport apply_scene_update(const SceneUpdateMessage& msg);

  // Unknown keys in first-seen order; clears the set.
  std::vector<ObjectKey> drain_unknown();
  const std::vector<ObjectKey>& pending_unknown() const { return unknown_order_; }

  // Live keys, ascending.
  std::vector<ObjectKey> known_keys() const;

  const std::map<ObjectKey, ObjectRecord>& records() const { return records_; }
  const ObjectRecord* find(ObjectKey key) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::map<ObjectKey, ObjectRecord> records_;
  std::vector<ObjectKey> unknown_order_;
  std::unordered_set<std::uint32_t> unknown_set_;
};

/// Line-delimited text export, one object per line:
///   key kind px py pz qw qx qy qz vx vy vz wx wy wz r g b a hx hy hz
/// Reals use the shortest representation that round-trips.
std::string export_snapshot(const SceneRegistry& registry);
std::vector<ObjectRecord> parse_snapshot(const std::string& text);

}  // namespace teleop
