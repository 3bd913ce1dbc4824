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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "teleop/operator_session.hpp"
#include "teleop/sim_world.hpp"
#include "teleop/udp_endpoint.hpp"

namespace teleop::bench {

struct FrequencyConfig {
  std::size_t object_count = 4;
  double duration = 30.0;         // s, wall clock
  double session_rate = 72.0;     // Hz; 0 runs the client loop unthrottled
  double controller_rate = 120.0; // Hz
  double controller_delay = 0.0;  // s of artificial work added to every controller step
  std::uint64_t seed = 1;
  SimConfig sim;
  SessionConfig session;
};

struct FrequencyReport {
  std::size_t samples = 0;
  double avg_hz = 0.0;
  double low1_hz = 0.0;
  double duration = 0.0;
  std::size_t object_count = 0;
  TransportStats client;
  TransportStats controller;
};

/// Runs controller and client as independent loops over loopback UDP in this
/// process and measures the client tick frequency. Throws
/// InsufficientSamples when fewer than 100 tick intervals were observed.
FrequencyReport run_frequency_bench(const FrequencyConfig& config);

enum class FailureMode { None, OversizeMessage, DecodeError, DeadlineMiss };
std::string to_string(FailureMode mode);

struct OverloadConfig {
  double spawn_rate = 4.0;  // blocks per simulated second
  std::size_t ceiling = 300;
  std::size_t runs = 20;
  std::uint64_t seed = 1;  // run i uses seed + i
  std::size_t initial_objects = 0;
  double max_duration = 600.0;  // simulated seconds per run
  double tick_rate = 72.0;      // Hz, lockstep controller + client
  double deadline = 0.0;        // s per iteration; 0 means one tick period
  SimConfig sim;
  SessionConfig session;
};

struct OverloadRun {
  std::uint64_t seed = 0;
  std::size_t max_objects = 0;
  FailureMode failure = FailureMode::None;
  double sim_seconds = 0.0;
  std::size_t size_checks = 0;
  std::size_t size_mismatches = 0;

  friend bool operator==(const OverloadRun&, const OverloadRun&) = default;
};

struct OverloadReport {
  double spawn_rate = 0.0;
  std::size_t ceiling = 0;
  std::size_t runs = 0;
  std::vector<OverloadRun> per_run;
  FailureMode failure_mode = FailureMode::None;  // first failure seen across runs
  std::size_t max_objects_reached = 0;           // minimum over runs
  double mean_objects = 0.0;
  std::size_t size_mismatches = 0;

  friend bool operator==(const OverloadReport&, const OverloadReport&) = default;
};

/// Spawns seeded random blocks at spawn_rate until a failure mode triggers
/// or the live object count reaches the ceiling, once per run. Controller
/// step and client tick run in lockstep over loopback UDP with simulated
/// time, so a run takes far less wall time than it simulates.
OverloadReport run_overload_bench(const OverloadConfig& config);
OverloadRun run_overload_once(const OverloadConfig& config, std::uint64_t seed);

struct Thresholds {
  std::optional<double> min_avg_hz;
  std::optional<double> min_low1_hz;
  std::optional<std::size_t> min_objects;
};

// Names of violated thresholds; empty when all pass.
std::vector<std::string> check(const FrequencyReport& report, const Thresholds& thresholds);
std::vector<std::string> check(const OverloadReport& report, const Thresholds& thresholds);

/// key=value lines, one metric per line, preceded by '#' summary lines.
std::string format_report(const FrequencyReport& report);
std::string format_report(const OverloadReport& report);

// Throws IoFailure when the file cannot be written.
void emit_report(const FrequencyReport& report, const std::filesystem::path& path);
void emit_report(const OverloadReport& report, const std::filesystem::path& path);

}  // namespace teleop::bench
