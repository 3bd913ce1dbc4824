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

#include "teleop/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "teleop/error.hpp"

namespace teleop::bench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Clock::duration period_of(double rate) {
  return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / rate));
}

struct LoopbackPair {
  UdpEndpoint controller{SocketAddress{"127.0.0.1", 0}};
  UdpEndpoint client{SocketAddress{"127.0.0.1", 0}};

  LoopbackPair() {
    controller.set_peer({"127.0.0.1", client.local_port()});
    client.set_peer({"127.0.0.1", controller.local_port()});
  }
};

// Slow circle around the initial goal, inside the default walls.
OperatorInput circling_hand(const Pose& center, double t) {
  OperatorInput in;
  in.hand_pose = center;
  in.hand_pose.position += 0.05 * Eigen::Vector3d(std::cos(std::numbers::pi * t), std::sin(std::numbers::pi * t), 0.0);
  return in;
}

}  // namespace

std::string to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::None: return "none";
    case FailureMode::OversizeMessage: return "oversize-message";
    case FailureMode::DecodeError: return "decode-error";
    case FailureMode::DeadlineMiss: return "deadline-miss";
  }
  return "unknown";
}

FrequencyReport run_frequency_bench(const FrequencyConfig& config) {
  if (!(config.controller_rate > 0.0)) throw Error(Errc::ConfigError, "controller rate must be positive");

  SimConfig sim = config.sim;
  sim.tick_dt = 1.0 / config.controller_rate;
  sim.seed = config.seed;
  SimWorld world(sim);
  for (std::size_t i = 0; i < config.object_count; ++i) world.spawn_block();

  SessionConfig session_config = config.session;
  if (config.session_rate > 0.0) session_config.tick_rate = config.session_rate;
  session_config.stats_capacity = 16;
  OperatorSession session(session_config);

  LoopbackPair link;
  std::atomic<bool> stop{false};

  std::thread controller([&] {
    const auto period = period_of(config.controller_rate);
    auto next = Clock::now();
    while (!stop.load()) {
      if (auto msg = link.controller.receive_latest()) {
        if (auto* goal = std::get_if<GoalCommandMessage>(&*msg)) world.apply_goal_command(*goal);
      }
      if (config.controller_delay > 0.0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(config.controller_delay));
      }
      link.controller.send(world.step());
      next += period;
      std::this_thread::sleep_until(next);
      // Skip missed slots instead of bursting to catch up.
      if (Clock::now() > next + period) next = Clock::now();
    }
  });

  std::vector<double> stamps;
  stamps.reserve(static_cast<std::size_t>(config.duration * std::max(config.session_rate, 1000.0)) + 16);
  const Clock::time_point start = Clock::now();
  const bool limited = config.session_rate > 0.0;
  const auto period = limited ? period_of(config.session_rate) : Clock::duration::zero();
  auto next = start;
  const Pose center = session_config.initial_goal;

  while (seconds_since(start) < config.duration) {
    std::optional<SceneUpdateMessage> incoming;
    if (auto msg = link.client.receive_latest()) {
      if (auto* scene = std::get_if<SceneUpdateMessage>(&*msg)) incoming = std::move(*scene);
    }
    const double t = seconds_since(start);
    link.client.send(session.tick(circling_hand(center, t), incoming, t));
    stamps.push_back(seconds_since(start));
    if (limited) {
      next += period;
      std::this_thread::sleep_until(next);
      if (Clock::now() > next + period) next = Clock::now();
    }
  }
  stop = true;
  controller.join();

  const FrequencySummary summary = summarize_ticks(stamps);
  if (summary.samples < 100) {
    throw Error(Errc::InsufficientSamples,
                "only " + std::to_string(summary.samples) + " tick intervals; need at least 100");
  }
  FrequencyReport report;
  report.samples = summary.samples;
  report.avg_hz = summary.avg_hz;
  report.low1_hz = summary.low1_hz;
  report.duration = summary.duration;
  report.object_count = config.object_count;
  report.client = link.client.stats();
  report.controller = link.controller.stats();
  return report;
}

OverloadRun run_overload_once(const OverloadConfig& config, std::uint64_t seed) {
  if (!(config.tick_rate > 0.0)) throw Error(Errc::ConfigError, "tick rate must be positive");
  const double dt = 1.0 / config.tick_rate;
  const double deadline = config.deadline > 0.0 ? config.deadline : dt;
  const std::size_t window = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(config.tick_rate)));

  SimConfig sim = config.sim;
  sim.tick_dt = dt;
  sim.seed = seed;
  SimWorld world(sim);
  for (std::size_t i = 0; i < config.initial_objects; ++i) world.spawn_block();

  SessionConfig session_config = config.session;
  session_config.tick_rate = config.tick_rate;
  session_config.stats_capacity = 16;
  OperatorSession session(session_config);
  OperatorInput hold;
  hold.hand_pose = session_config.initial_goal;

  LoopbackPair link;
  OverloadRun run;
  run.seed = seed;
  run.max_objects = world.objects().size();

  std::deque<double> recent;  // wall-clock seconds per iteration
  double recent_total = 0.0;
  double next_spawn = config.spawn_rate > 0.0 ? 1.0 / config.spawn_rate : 0.0;

  for (std::uint64_t iter = 0;; ++iter) {
    const double t = static_cast<double>(iter) * dt;
    if (t >= config.max_duration || run.max_objects >= config.ceiling) break;
    const Clock::time_point begin = Clock::now();

    while (config.spawn_rate > 0.0 && t >= next_spawn) {
      if (world.objects().size() < config.ceiling) world.spawn_block();
      next_spawn += 1.0 / config.spawn_rate;
    }

    if (auto msg = link.controller.receive_latest()) {
      if (auto* goal = std::get_if<GoalCommandMessage>(&*msg)) world.apply_goal_command(*goal);
    }
    const SceneUpdateMessage scene = world.step();
    const std::size_t predicted = wire::encoded_size(scene);
    try {
      link.controller.send(scene);
    } catch (const Error& e) {
      if (e.code() != Errc::OversizeMessage) throw;
      run.failure = FailureMode::OversizeMessage;
      break;
    }
    ++run.size_checks;
    if (link.controller.stats().last_datagram_bytes != predicted) ++run.size_mismatches;

    std::optional<SceneUpdateMessage> incoming;
    if (auto msg = link.client.receive_latest()) {
      if (auto* s = std::get_if<SceneUpdateMessage>(&*msg)) incoming = std::move(*s);
    }
    try {
      link.client.send(session.tick(hold, incoming, t));
    } catch (const Error& e) {
      if (e.code() != Errc::OversizeMessage) throw;
      run.failure = FailureMode::OversizeMessage;
      break;
    }
    if (link.client.stats().decode_errors > 0 || link.controller.stats().decode_errors > 0) {
      run.failure = FailureMode::DecodeError;
      break;
    }

    run.max_objects = std::max(run.max_objects, world.objects().size());
    run.sim_seconds = t + dt;

    const double spent = seconds_since(begin);
    recent.push_back(spent);
    recent_total += spent;
    if (recent.size() > window) {
      recent_total -= recent.front();
      recent.pop_front();
    }
    if (recent.size() == window && recent_total / static_cast<double>(window) > deadline) {
      run.failure = FailureMode::DeadlineMiss;
      break;
    }
  }
  return run;
}

OverloadReport run_overload_bench(const OverloadConfig& config) {
  OverloadReport report;
  report.spawn_rate = config.spawn_rate;
  report.ceiling = config.ceiling;
  report.runs = config.runs;
  double total = 0.0;
  for (std::size_t i = 0; i < config.runs; ++i) {
    OverloadRun run = run_overload_once(config, config.seed + i);
    if (report.failure_mode == FailureMode::None) report.failure_mode = run.failure;
    report.max_objects_reached = i == 0 ? run.max_objects : std::min(report.max_objects_reached, run.max_objects);
    report.size_mismatches += run.size_mismatches;
    total += static_cast<double>(run.max_objects);
    report.per_run.push_back(run);
  }
  if (config.runs > 0) report.mean_objects = total / static_cast<double>(config.runs);
  return report;
}

std::vector<std::string> check(const FrequencyReport& report, const Thresholds& thresholds) {
  std::vector<std::string> failed;
  if (thresholds.min_avg_hz && report.avg_hz < *thresholds.min_avg_hz) failed.push_back("min_avg_hz");
  if (thresholds.min_low1_hz && report.low1_hz < *thresholds.min_low1_hz) failed.push_back("min_low1_hz");
  return failed;
}

std::vector<std::string> check(const OverloadReport& report, const Thresholds& thresholds) {
  std::vector<std::string> failed;
  if (thresholds.min_objects) {
    for (const auto& run : report.per_run) {
      if (run.max_objects < *thresholds.min_objects || run.failure != FailureMode::None) {
        failed.push_back("min_objects");
        break;
      }
    }
  }
  if (report.size_mismatches != 0) failed.push_back("size_accounting");
  return failed;
}

std::string format_report(const FrequencyReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << "# frequency bench: " << r.samples << " ticks over " << r.duration << " s with " << r.object_count
      << " objects\n";
  out << "# average " << r.avg_hz << " Hz, 1% low " << r.low1_hz << " Hz\n";
  out << "report=frequency\n";
  out << "samples=" << r.samples << '\n';
  out << "avg_hz=" << r.avg_hz << '\n';
  out << "low1_hz=" << r.low1_hz << '\n';
  out << "duration_s=" << r.duration << '\n';
  out << "object_count=" << r.object_count << '\n';
  out << "client_stale_discarded=" << r.client.stale_discarded << '\n';
  out << "client_decode_errors=" << r.client.decode_errors << '\n';
  out << "controller_stale_discarded=" << r.controller.stale_discarded << '\n';
  out << "controller_decode_errors=" << r.controller.decode_errors << '\n';
  return out.str();
}

std::string format_report(const OverloadReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << "# overload bench: " << r.runs << " runs at " << r.spawn_rate << " spawns/s, ceiling " << r.ceiling << '\n';
  out << "# fewest objects reached " << r.max_objects_reached << ", mean " << r.mean_objects << ", failure "
      << to_string(r.failure_mode) << '\n';
  out << "report=overload\n";
  out << "spawn_rate=" << r.spawn_rate << '\n';
  out << "ceiling=" << r.ceiling << '\n';
  out << "runs=" << r.runs << '\n';
  out << "failure_mode=" << to_string(r.failure_mode) << '\n';
  out << "max_objects_reached=" << r.max_objects_reached << '\n';
  out << "mean_objects=" << r.mean_objects << '\n';
  out << "size_mismatches=" << r.size_mismatches << '\n';
  for (std::size_t i = 0; i < r.per_run.size(); ++i) {
    const OverloadRun& run = r.per_run[i];
    out << "run." << i << ".seed=" << run.seed << '\n';
    out << "run." << i << ".max_objects=" << run.max_objects << '\n';
    out << "run." << i << ".failure_mode=" << to_string(run.failure) << '\n';
    out << "run." << i << ".sim_seconds=" << run.sim_seconds << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(Errc::IoFailure, "write to " + path.string() + " failed");
}

}  // namespace

void emit_report(const FrequencyReport& report, const std::filesystem::path& path) {
  write_file(format_report(report), path);
}

void emit_report(const OverloadReport& report, const std::filesystem::path& path) {
  write_file(format_report(report), path);
}

}  // namespace teleop::bench
