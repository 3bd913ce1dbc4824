#!/usr/bin/env python3
# Copyright 2026 The teleop-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the golden datagram corpus with Python's struct module.

Kept independent of the C++ encoder on purpose: the C++ tests compare their
encoder output against these files byte for byte.
"""

import pathlib
import struct

HERE = pathlib.Path(__file__).resolve().parent

MAGIC = 0x5442
VERSION = 0x01
SCENE = 0x01
GOAL = 0x02


def header(kind, seq):
    return struct.pack("<HBBI", MAGIC, VERSION, kind, seq)


def pose(px, py, pz, qw, qx, qy, qz):
    return struct.pack("<7f", px, py, pz, qw, qx, qy, qz)


def twist(vx, vy, vz, wx, wy, wz):
    return struct.pack("<6f", vx, vy, vz, wx, wy, wz)


def spec(kind, hx, hy, hz, r, g, b, a):
    return struct.pack("<B7f", kind, hx, hy, hz, r, g, b, a)


def keys(values):
    return struct.pack("<H", len(values)) + b"".join(struct.pack("<I", k) for k in values)


CASES = {}

CASES["goal_empty"] = (
    header(GOAL, 0) + b"\x00" + pose(0, 0, 0, 1, 0, 0, 0) + struct.pack("<f", 0.0) + keys([]) + keys([]),
    """goal command, seq 0
paused: false
goal_pose: position (0, 0, 0), orientation (w=1, x=0, y=0, z=0)
goal_gripper_width: 0
known_keys: []
unknown_keys: []
size: 45 bytes = header 8 + paused 1 + pose 28 + width 4 + two u16 counts 4
""",
)

CASES["scene_one_update"] = (
    header(SCENE, 7)
    + pose(0.5, 0.0, 0.25, 1, 0, 0, 0)
    + struct.pack("<f", 0.04)
    + struct.pack("<H", 1)
    + struct.pack("<I", 3)
    + pose(0.25, -0.125, 0.5, 0, 0, 0, 1)
    + twist(0.1, 0, 0, 0, 0, 0.5)
    + struct.pack("<H", 0)
    + struct.pack("<H", 0),
    """scene update, seq 7
ee_pose: position (0.5, 0, 0.25), orientation (w=1, x=0, y=0, z=0)
gripper_width: 0.04
updates: [key 3, position (0.25, -0.125, 0.5), orientation (w=0, x=0, y=0, z=1),
          linear (0.1, 0, 0), angular (0, 0, 0.5)]
creates: []
deletes: []
size: 102 bytes = header 8 + pose 28 + width 4 + 3 counts 6 + update entry 56
""",
)

CASES["scene_create_delete"] = (
    header(SCENE, 0x01020304)
    + pose(0.4, 0.0, 0.3, 1, 0, 0, 0)
    + struct.pack("<f", 0.08)
    + struct.pack("<H", 0)
    + struct.pack("<H", 1)
    + struct.pack("<I", 42)
    + spec(0, 0.02, 0.02, 0.02, 1.0, 0.5, 0.0, 1.0)
    + pose(0.3, 0.1, 0.05, 1, 0, 0, 0)
    + twist(0, 0, 0, 0, 0, 0)
    + keys([9, 10]),
    """scene update, seq 16909060 (0x01020304)
ee_pose: position (0.4, 0, 0.3), orientation identity
gripper_width: 0.08
updates: []
creates: [key 42, kind block, half_extents (0.02, 0.02, 0.02), color (1, 0.5, 0, 1),
          position (0.3, 0.1, 0.05), orientation identity, zero twist]
deletes: [9, 10]
size: 139 bytes = 46 + create entry 85 + 2 deletes 8
""",
)

CASES["goal_paused_keys"] = (
    header(GOAL, 255)
    + b"\x01"
    + pose(0.5, -0.25, 0.375, 0, 1, 0, 0)
    + struct.pack("<f", 0.0625)
    + keys([1, 2, 300])
    + keys([77]),
    """goal command, seq 255
paused: true
goal_pose: position (0.5, -0.25, 0.375), orientation (w=0, x=1, y=0, z=0)
goal_gripper_width: 0.0625
known_keys: [1, 2, 300]
unknown_keys: [77]
size: 61 bytes = 45 + 4 keys 16
""",
)


def main():
    for name, (data, description) in CASES.items():
        (HERE / f"{name}.bin").write_bytes(data)
        (HERE / f"{name}.txt").write_text(description)
        print(f"{name}.bin: {len(data)} bytes")


if __name__ == "__main__":
    main()
