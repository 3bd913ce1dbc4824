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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "teleop/error.hpp"
#include "teleop/input_trace.hpp"
#include "teleop/operator_session.hpp"
#include "teleop/tick_stats.hpp"
#include "test_support.hpp"

namespace teleop {
namespace {

OperatorInput at(double x, double y, double z, double axis = 0.0, bool pause = false) {
  OperatorInput in;
  in.hand_pose = Pose::from_position(x, y, z);
  in.gripper_axis = axis;
  in.pause_pressed = pause;
  return in;
}

SceneUpdateMessage scene_at(double x, double y, double z) {
  SceneUpdateMessage m;
  m.ee_pose = Pose::from_position(x, y, z);
  m.gripper_width = 0.08;
  return m;
}

TEST(OperatorSessionTest, TogglePause) {
  OperatorSession s;
  EXPECT_TRUE(s.toggle_pause());
  EXPECT_FALSE(s.toggle_pause());
}

TEST(OperatorSessionTest, PauseFreezesAndResumeTracks) {
  OperatorSession s;
  const auto first = s.tick(at(0.45, 0, 0.3), std::nullopt, 0.0);
  const auto paused = s.tick(at(0.5, 0.1, 0.3, -1.0, true), std::nullopt, 0.1);
  EXPECT_TRUE(paused.paused);
  EXPECT_EQ(paused.goal_pose, first.goal_pose);
  EXPECT_EQ(paused.goal_gripper_width, first.goal_gripper_width);

  const auto resumed = s.tick(at(0.5, 0.1, 0.3, 0.0, true), std::nullopt, 0.2);
  EXPECT_FALSE(resumed.paused);
  EXPECT_EQ(resumed.goal_pose, Pose::from_position(0.5, 0.1, 0.3));
}

TEST(OperatorSessionTest, DoubleToggleMatchesNeverPausedOnlyWhenInputReturns) {
  // Three ticks: pause, move while paused, unpause back at the frozen pose.
  OperatorSession toggled, plain;
  const auto a = at(0.45, 0.0, 0.3);
  toggled.tick(a, std::nullopt, 0);
  plain.tick(a, std::nullopt, 0);

  auto paused_in = at(0.6, 0.2, 0.3);
  paused_in.pause_pressed = true;
  toggled.tick(paused_in, std::nullopt, 1);
  plain.tick(a, std::nullopt, 1);

  auto back = a;
  back.pause_pressed = true;
  const auto g1 = toggled.tick(back, std::nullopt, 2);
  const auto g2 = plain.tick(a, std::nullopt, 2);
  EXPECT_EQ(g1.goal_pose, g2.goal_pose);
  EXPECT_EQ(g1.goal_gripper_width, g2.goal_gripper_width);
  EXPECT_EQ(g1.paused, g2.paused);
}

TEST(OperatorSessionTest, GoalWidthIntegratesRate) {
  SessionConfig c;
  c.initial_width = 0.0;
  OperatorSession s(c);
  EXPECT_EQ(s.update_goal_width(0.0, 1.0), 0.0);
  EXPECT_EQ(s.update_goal_width(-1.0, 1.0), 0.0);
  for (int i = 0; i < 100; ++i) s.update_goal_width(1.0, 0.01);
  EXPECT_NEAR(s.state().goal_width, 0.08, 1e-12);
  EXPECT_EQ(s.update_goal_width(1.0, 1.0), 0.08);
  EXPECT_NEAR(s.update_goal_width(-5.0, 0.5), 0.04, 1e-15);  // axis clamped to −1
}

TEST(OperatorSessionTest, Opacity) {
  OperatorSession s;
  const auto ee = Pose::from_position(0.4, 0, 0.3);
  EXPECT_EQ(s.compute_opacity(ee, ee), 0.0);
  EXPECT_NEAR(s.compute_opacity(Pose::from_position(0.45, 0, 0.3), ee), 0.5, 1e-12);
  EXPECT_EQ(s.compute_opacity(Pose::from_position(1.4, 0, 0.3), ee), 1.0);
  s.toggle_pause();
  EXPECT_EQ(s.compute_opacity(ee, ee), 1.0);
}

TEST(OperatorSessionTest, SteadyAllowedInputEchoes) {
  OperatorSession s;
  const auto msg = s.tick(at(0.5, 0.1, 0.2), scene_at(0.4, 0, 0.3), 0.0);
  EXPECT_EQ(msg.goal_pose, Pose::from_position(0.5, 0.1, 0.2));
  EXPECT_FALSE(msg.paused);
  EXPECT_TRUE(msg.known_keys.empty());
  EXPECT_TRUE(msg.unknown_keys.empty());
  EXPECT_EQ(msg.goal_gripper_width, 0.08);
}

TEST(OperatorSessionTest, ViolatingInputKeepsGoalAndOpacityRises) {
  OperatorSession s;
  const auto g = s.tick(at(0.5, 0.0, 0.3), scene_at(0.5, 0.0, 0.3), 0.0);
  EXPECT_EQ(s.state().opacity, 0.0);

  // Default hand hull reaches 0.1 m in x, so 0.7 pushes it past the x = 0.75 wall.
  const auto frozen = s.tick(at(0.7, 0.0, 0.3), scene_at(0.5, 0.0, 0.3), 0.1);
  EXPECT_EQ(frozen.goal_pose, g.goal_pose);
  ASSERT_TRUE(s.state().guard_violation);
  EXPECT_EQ(s.state().guard_violation->wall, 0u);
  EXPECT_NEAR(s.state().opacity, 1.0, 1e-12);

  s.tick(at(0.56, 0.0, 0.3), scene_at(0.5, 0.0, 0.3), 0.2);
  EXPECT_NEAR(s.state().opacity, 0.6, 1e-9);
}

TEST(OperatorSessionTest, UnknownKeyEchoedOnSameTick) {
  OperatorSession s;
  SceneUpdateMessage m = scene_at(0.4, 0, 0.3);
  m.updates.push_back({ObjectKey{42}, Pose{}, Twist{}});
  const auto msg = s.tick(at(0.4, 0, 0.3), m, 0.0);
  ASSERT_EQ(msg.unknown_keys.size(), 1u);
  EXPECT_EQ(to_underlying(msg.unknown_keys[0]), 42u);
  EXPECT_TRUE(s.tick(at(0.4, 0, 0.3), std::nullopt, 0.1).unknown_keys.empty());
}

TEST(OperatorSessionTest, KnownKeysFollowRegistry) {
  OperatorSession s;
  SceneUpdateMessage m = scene_at(0.4, 0, 0.3);
  m.creates.push_back({ObjectKey{9}, ObjectSpec{}, Pose{}, Twist{}});
  m.creates.push_back({ObjectKey{3}, ObjectSpec{}, Pose{}, Twist{}});
  const auto msg = s.tick(at(0.4, 0, 0.3), m, 0.0);
  EXPECT_EQ(msg.known_keys, (std::vector<ObjectKey>{ObjectKey{3}, ObjectKey{9}}));
  EXPECT_EQ(s.last_apply().created, 2u);
}

TEST(OperatorSessionTest, RejectsInitialGoalOutsideWalls) {
  SessionConfig c;
  c.initial_goal = Pose::from_position(5, 0, 0);
  EXPECT_THROW(OperatorSession{c}, Error);
}

TEST(OperatorSessionProperty, PauseFreezeUnderRandomInput) {
  testing::MessageGenerator gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    OperatorSession s;
    for (int i = 0; i < 20; ++i) s.tick(at(gen.real(0.2, 0.65), gen.real(-0.3, 0.3), gen.real(0.1, 0.5), gen.real(-1, 1)), std::nullopt, i);
    auto enter = at(0.4, 0, 0.3);
    enter.pause_pressed = true;
    const auto frozen = s.tick(enter, std::nullopt, 20);
    for (int i = 0; i < 50; ++i) {
      OperatorInput in;
      in.hand_pose = gen.pose();
      in.gripper_axis = gen.real(-1, 1);
      const auto msg = s.tick(in, std::nullopt, 21 + i);
      ASSERT_EQ(msg.goal_pose, frozen.goal_pose);
      ASSERT_EQ(msg.goal_gripper_width, frozen.goal_gripper_width);
      ASSERT_TRUE(msg.paused);
      ASSERT_EQ(s.state().opacity, 1.0);
    }
  }
}

TEST(OperatorSessionProperty, EmittedGoalsAlwaysAllowed) {
  testing::MessageGenerator gen(32);
  OperatorSession s;
  const auto& ws = s.config().workspace;
  for (int i = 0; i < 20000; ++i) {
    OperatorInput in;
    in.hand_pose.position = Eigen::Vector3d(gen.real(-0.2, 1.0), gen.real(-0.7, 0.7), gen.real(-0.2, 0.9));
    in.hand_pose.orientation = gen.quaternion();
    in.gripper_axis = gen.real(-1, 1);
    in.pause_pressed = gen.count(50) == 0;
    const auto msg = s.tick(in, std::nullopt, i);
    ASSERT_TRUE(pose_allowed(ws.polytope, ws.walls, msg.goal_pose));
    ASSERT_GE(s.state().opacity, 0.0);
    ASSERT_LE(s.state().opacity, 1.0);
    ASSERT_GE(msg.goal_gripper_width, 0.0);
    ASSERT_LE(msg.goal_gripper_width, kMaxGripperWidth);
  }
}

TEST(OperatorSessionProperty, OpacityMonotoneInDistance) {
  OperatorSession s;
  const auto ee = Pose::from_position(0.4, 0, 0.3);
  double last = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double o = s.compute_opacity(Pose::from_position(0.4 + i * 0.001, 0, 0.3), ee);
    ASSERT_GE(o, last);
    last = o;
  }
}

TEST(OperatorSessionProperty, EveryUnknownKeyEchoedOnce) {
  testing::MessageGenerator gen(33);
  OperatorSession s;
  testing::ReferenceRegistry ref;
  std::size_t echoed = 0;
  for (std::uint32_t i = 0; i < 3000; ++i) {
    auto m = testing::lifecycle_message(gen, i);
    ref.apply(m);
    const auto msg = s.tick(at(0.4, 0, 0.3), m, i);
    std::vector<std::uint32_t> got;
    for (auto k : msg.unknown_keys) got.push_back(to_underlying(k));
    ASSERT_EQ(got, ref.drain()) << "tick " << i;
    echoed += got.size();
  }
  EXPECT_GT(echoed, 100u);
}

TEST(TickStatsTest, SummaryOfUniformTicks) {
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(i * 0.01);
  const auto s = summarize_ticks(t);
  EXPECT_EQ(s.samples, 100u);
  EXPECT_NEAR(s.avg_hz, 100.0, 1e-9);
  EXPECT_NEAR(s.low1_hz, 100.0, 1e-6);
  EXPECT_NEAR(s.duration, 1.0, 1e-12);
}

TEST(TickStatsTest, LowPicksSlowTicks) {
  // 198 ticks at 100 Hz, two at 10 Hz: rank 2 of 200 is a 10 Hz tick.
  std::vector<double> t{0.0};
  for (int i = 0; i < 200; ++i) t.push_back(t.back() + (i == 50 || i == 150 ? 0.1 : 0.01));
  const auto s = summarize_ticks(t);
  EXPECT_NEAR(s.low1_hz, 10.0, 1e-9);
  EXPECT_NEAR(s.avg_hz, 200.0 / (198 * 0.01 + 0.2), 1e-9);
}

TEST(TickStatsTest, LowNeverExceedsAverage) {
  std::vector<double> t{0.0};
  for (int i = 0; i < 199; ++i) t.push_back(t.back() + 0.001);
  t.push_back(t.back() + 1000.0);
  const auto s = summarize_ticks(t);
  EXPECT_LE(s.low1_hz, s.avg_hz);

  std::mt19937_64 rng(5);
  std::exponential_distribution<double> gap(70.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> ts{0.0};
    for (int i = 0; i < 300; ++i) ts.push_back(ts.back() + gap(rng));
    const auto r = summarize_ticks(ts);
    ASSERT_LE(r.low1_hz, r.avg_hz);
  }
}

TEST(TickStatsTest, RingKeepsNewest) {
  TickStats ring(4);
  for (int i = 0; i < 10; ++i) ring.record(i * (i < 6 ? 1.0 : 0.5));
  EXPECT_EQ(ring.size(), 4u);
  EXPECT_EQ(ring.summary().samples, 3u);
  EXPECT_NEAR(ring.summary().duration, 4.5 - 3.0, 1e-12);
}

TEST(InputTraceTest, ParsesAndRoundTrips) {
  const auto entries = parse_input_trace(
      "# t px py pz qw qx qy qz axis pause\n"
      "0.0 0.4 0 0.3 1 0 0 0 0 0\n"
      "\n"
      "0.5 0.45 0.1 0.3 1 0 0 0 -1 1  # close and pause\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1].hand_pose.position, Eigen::Vector3d(0.45, 0.1, 0.3));
  EXPECT_EQ(entries[1].gripper_axis, -1.0);
  EXPECT_TRUE(entries[1].pause_edge);

  const auto again = parse_input_trace(format_input_trace(entries));
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again[1].hand_pose, entries[1].hand_pose);
  EXPECT_EQ(again[1].time, 0.5);
}

TEST(InputTraceTest, RejectsBadLines) {
  EXPECT_THROW(parse_input_trace("0 1 2\n"), Error);
  EXPECT_THROW(parse_input_trace("0 0.4 0 0.3 1 0 0 0 zero 0\n"), Error);
  EXPECT_THROW(parse_input_trace("1 0.4 0 0.3 1 0 0 0 0 0\n0.5 0.4 0 0.3 1 0 0 0 0 0\n"), Error);
}

TEST(TraceCursorTest, HoldsLastEntryAndAppliesPauseParity) {
  auto entries = parse_input_trace(
      "0.0 0.4 0 0.3 1 0 0 0 0 0\n"
      "0.1 0.41 0 0.3 1 0 0 0 1 1\n"
      "0.2 0.42 0 0.3 1 0 0 0 0 1\n"
      "0.3 0.43 0 0.3 1 0 0 0 0 1\n");
  TraceCursor cursor(entries);
  EXPECT_FALSE(cursor.advance(0.05).pause_pressed);
  const auto two_edges = cursor.advance(0.25);
  EXPECT_FALSE(two_edges.pause_pressed);
  EXPECT_EQ(two_edges.hand_pose.position.x(), 0.42);
  EXPECT_TRUE(cursor.advance(0.3).pause_pressed);
  EXPECT_TRUE(cursor.finished());
  EXPECT_FALSE(cursor.advance(1.0).pause_pressed);
  EXPECT_EQ(cursor.end_time(), 0.3);
}

TEST(TraceCursorTest, ReplayIsDeterministic) {
  const auto entries = parse_input_trace(
      "0.0 0.4 0 0.3 1 0 0 0 -1 0\n"
      "0.3 0.5 0.1 0.3 1 0 0 0 0 1\n"
      "0.6 0.6 -0.1 0.2 1 0 0 0 1 1\n");
  auto run = [&] {
    OperatorSession s;
    TraceCursor cursor(entries);
    std::vector<GoalCommandMessage> out;
    for (int i = 0; i < 72; ++i) out.push_back(s.tick(cursor.advance(i / 72.0), std::nullopt, i / 72.0));
    return out;
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace teleop
