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

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <thread>

#include "teleop/bench.hpp"
#include "teleop/console_gateway.hpp"
#include "teleop/error.hpp"
#include "teleop/input_trace.hpp"
#include "teleop/operator_session.hpp"
#include "teleop/scenario.hpp"
#include "teleop/sim_world.hpp"
#include "teleop/udp_endpoint.hpp"
#include "teleop/workspace_config.hpp"

namespace {

using namespace teleop;
using Clock = std::chrono::steady_clock;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Fixed-rate loop pacing that skips missed slots instead of bursting.
class Pacer {
 public:
  explicit Pacer(double rate)
      : period_(std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / rate))),
        next_(Clock::now()) {}

  void wait() {
    next_ += period_;
    std::this_thread::sleep_until(next_);
    if (Clock::now() > next_ + period_) next_ = Clock::now();
  }

 private:
  Clock::duration period_;
  Clock::time_point next_;
};

WorkspaceConfig workspace_from(const std::string& path) {
  return path.empty() ? WorkspaceConfig{} : load_workspace_config(path);
}

struct ControllerOptions {
  std::string listen = "0.0.0.0:5005";
  std::string peer;
  double rate = 120.0;
  double max_speed = 1.0;
  double max_angular = 2.0;
  double gripper_speed = 0.1;
  std::string config;
  std::uint64_t seed = 1;
  std::string scenario;
  std::size_t spawn = 0;
  double duration = 0.0;
};

int run_controller(const ControllerOptions& o) {
  const WorkspaceConfig workspace = workspace_from(o.config);
  SimConfig sim;
  sim.tick_dt = 1.0 / o.rate;
  sim.limits = {o.max_speed, o.max_angular, o.gripper_speed};
  sim.bounds = workspace.bounds;
  sim.seed = o.seed;
  SimWorld world(sim);
  for (std::size_t i = 0; i < o.spawn; ++i) world.spawn_block();
  std::optional<ScenarioRunner> scenario;
  if (!o.scenario.empty()) scenario.emplace(load_scenario(o.scenario));

  UdpEndpoint link(SocketAddress::parse(o.listen));
  if (!o.peer.empty()) link.set_peer(SocketAddress::parse(o.peer));
  std::fprintf(stderr, "controller: listening on port %u at %.0f Hz\n", link.local_port(), o.rate);

  const auto start = Clock::now();
  Pacer pacer(o.rate);
  double last_log = 0.0;
  while (!g_stop && (o.duration <= 0.0 || world.time() < o.duration)) {
    if (auto msg = link.receive_latest()) {
      if (auto* goal = std::get_if<GoalCommandMessage>(&*msg)) {
        try {
          world.apply_goal_command(*goal);
        } catch (const Error& e) {
          std::fprintf(stderr, "controller: goal rejected: %s\n", e.what());
        }
      }
    }
    if (scenario) scenario->advance(world, world.time());
    const SceneUpdateMessage scene = world.step();
    if (link.has_peer()) link.send(scene);

    if (const double t = seconds_since(start); t - last_log >= 5.0) {
      last_log = t;
      const auto s = link.stats();
      std::fprintf(stderr, "controller: t=%.0fs objects=%zu sent=%llu delivered=%llu stale=%llu decode_errors=%llu\n",
                   world.time(), world.objects().size(), static_cast<unsigned long long>(s.datagrams_sent),
                   static_cast<unsigned long long>(s.delivered), static_cast<unsigned long long>(s.stale_discarded),
                   static_cast<unsigned long long>(s.decode_errors));
    }
    pacer.wait();
  }
  link.close();
  return 0;
}

struct ClientOptions {
  std::string listen = "0.0.0.0:5006";
  std::string peer = "127.0.0.1:5005";
  double rate = 72.0;
  double d_full = 0.10;
  double width_rate = 0.08;
  std::string config;
  std::string trace;
  bool gateway = false;
  std::string gateway_host = "127.0.0.1";
  int gateway_port = 8080;
  std::string static_dir;
  double duration = 0.0;
};

int run_client(const ClientOptions& o) {
  if (o.trace.empty() && !o.gateway) throw Error(Errc::ConfigError, "choose an input source: --trace or --gateway");
  if (!o.trace.empty() && o.gateway) throw Error(Errc::ConfigError, "--trace and --gateway are exclusive");

  SessionConfig config;
  config.tick_rate = o.rate;
  config.d_full = o.d_full;
  config.width_rate = o.width_rate;
  config.workspace = workspace_from(o.config);
  OperatorSession session(config);

  std::optional<TraceCursor> cursor;
  if (!o.trace.empty()) {
    OperatorInput initial;
    initial.hand_pose = config.initial_goal;
    cursor.emplace(load_input_trace(o.trace), initial);
  }
  std::optional<ConsoleGateway> gateway;
  std::optional<ConsoleServer> server;
  if (o.gateway) {
    OperatorInput initial;
    initial.hand_pose = config.initial_goal;
    gateway.emplace(initial);
    server.emplace(*gateway, config.workspace, o.static_dir);
    const int port = server->start(o.gateway_host, o.gateway_port);
    std::fprintf(stderr, "client: console on http://%s:%d/\n", o.gateway_host.c_str(), port);
  }

  UdpEndpoint link(SocketAddress::parse(o.listen));
  link.set_peer(SocketAddress::parse(o.peer));

  OperatorInput input;
  input.hand_pose = config.initial_goal;
  const auto start = Clock::now();
  Pacer pacer(o.rate);
  while (!g_stop) {
    const double t = seconds_since(start);
    if (o.duration > 0.0 ? t >= o.duration : (cursor && cursor->finished() && t > cursor->end_time() + 1.0)) break;

    std::optional<SceneUpdateMessage> incoming;
    if (auto msg = link.receive_latest()) {
      if (auto* scene = std::get_if<SceneUpdateMessage>(&*msg)) incoming = std::move(*scene);
    }
    if (cursor) {
      input = cursor->advance(t);
    } else if (auto polled = gateway->poll_command()) {
      input = *polled;
    } else {
      input.pause_pressed = false;
    }
    const GoalCommandMessage goal = session.tick(input, incoming);
    link.send(goal);
    if (gateway) gateway->publish_frame(session, goal.unknown_keys);
    pacer.wait();
  }

  if (server) server->stop();
  if (gateway) gateway->close();
  link.close();
  const auto s = session.stats().summary();
  std::printf("ticks=%llu objects=%zu avg_hz=%.2f low1_hz=%.2f\n",
              static_cast<unsigned long long>(session.state().tick), session.registry().size(), s.avg_hz,
              s.low1_hz);
  return 0;
}

template <typename Report>
int finish_bench(const Report& report, const std::string& path, const bench::Thresholds& thresholds) {
  std::cout << bench::format_report(report);
  if (!path.empty()) bench::emit_report(report, path);
  const auto violated = bench::check(report, thresholds);
  for (const auto& name : violated) std::fprintf(stderr, "bench: threshold %s violated\n", name.c_str());
  return violated.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated robot teleoperation: controller, client and benches"};
  app.require_subcommand(1);

  ControllerOptions ctl;
  auto* controller = app.add_subcommand("controller", "Simulated robot and object world");
  controller->add_option("--listen", ctl.listen, "Local address host:port")->capture_default_str();
  controller->add_option("--peer", ctl.peer, "Client address; default answers whoever sends goals");
  controller->add_option("--rate", ctl.rate, "Tick rate in Hz")->capture_default_str()->check(CLI::PositiveNumber);
  controller->add_option("--max-speed", ctl.max_speed, "End-effector speed limit, m/s")->capture_default_str();
  controller->add_option("--max-angular", ctl.max_angular, "Angular speed limit, rad/s")->capture_default_str();
  controller->add_option("--gripper-speed", ctl.gripper_speed, "Finger slew rate, m/s")->capture_default_str();
  controller->add_option("--config", ctl.config, "Workspace JSON (walls, polytope, bounds)")->check(CLI::ExistingFile);
  controller->add_option("--seed", ctl.seed, "Spawn RNG seed")->capture_default_str();
  controller->add_option("--scenario", ctl.scenario, "Scenario script")->check(CLI::ExistingFile);
  controller->add_option("--spawn", ctl.spawn, "Random blocks at start")->capture_default_str();
  controller->add_option("--duration", ctl.duration, "Stop after this many simulated seconds (0 runs forever)");

  ClientOptions cli;
  auto* client = app.add_subcommand("client", "Operator session");
  client->add_option("--listen", cli.listen, "Local address host:port")->capture_default_str();
  client->add_option("--peer", cli.peer, "Controller address host:port")->capture_default_str();
  client->add_option("--rate", cli.rate, "Session rate in Hz")->capture_default_str()->check(CLI::PositiveNumber);
  client->add_option("--d-full", cli.d_full, "Hand-to-robot distance for full cursor opacity, m")->capture_default_str();
  client->add_option("--width-rate", cli.width_rate, "Goal gripper rate at full deflection, m/s")->capture_default_str();
  client->add_option("--config", cli.config, "Workspace JSON (walls, polytope, bounds)")->check(CLI::ExistingFile);
  client->add_option("--trace", cli.trace, "Scripted input trace")->check(CLI::ExistingFile);
  client->add_flag("--gateway", cli.gateway, "Take input from the browser console");
  client->add_option("--gateway-host", cli.gateway_host, "Console bind address")->capture_default_str();
  client->add_option("--gateway-port", cli.gateway_port, "Console port (0 picks one)")->capture_default_str();
  client->add_option("--static", cli.static_dir, "Console bundle directory")->check(CLI::ExistingDirectory);
  client->add_option("--duration", cli.duration, "Stop after this many seconds (0: end of trace, or forever)");

  auto* bench_cmd = app.add_subcommand("bench", "Loopback benchmarks");
  bench_cmd->require_subcommand(1);

  bench::FrequencyConfig freq;
  std::string freq_report;
  bench::Thresholds freq_thresholds;
  auto* freq_cmd = bench_cmd->add_subcommand("freq", "Session loop frequency");
  freq_cmd->add_option("--objects", freq.object_count, "Blocks in the scene")->capture_default_str();
  freq_cmd->add_option("--duration", freq.duration, "Seconds")->capture_default_str();
  freq_cmd->add_option("--rate", freq.session_rate, "Session rate limit in Hz (0: unlimited)")->capture_default_str();
  freq_cmd->add_option("--controller-rate", freq.controller_rate, "Controller rate in Hz")->capture_default_str();
  freq_cmd->add_option("--controller-delay", freq.controller_delay, "Artificial controller work per step, s");
  freq_cmd->add_option("--seed", freq.seed, "Spawn RNG seed")->capture_default_str();
  freq_cmd->add_option("--report", freq_report, "Write the report here");
  freq_cmd->add_option("--min-avg", freq_thresholds.min_avg_hz, "Fail below this average, Hz");
  freq_cmd->add_option("--min-low1", freq_thresholds.min_low1_hz, "Fail below this 1% low, Hz");

  bench::OverloadConfig over;
  std::string over_report;
  bench::Thresholds over_thresholds;
  auto* over_cmd = bench_cmd->add_subcommand("overload", "Spawn blocks until something breaks");
  over_cmd->add_option("--spawn-rate", over.spawn_rate, "Blocks per second")->capture_default_str();
  over_cmd->add_option("--ceiling", over.ceiling, "Stop a run at this many objects")->capture_default_str();
  over_cmd->add_option("--runs", over.runs, "Number of runs, seeds seed..seed+runs-1")->capture_default_str();
  over_cmd->add_option("--seed", over.seed, "First seed")->capture_default_str();
  over_cmd->add_option("--initial", over.initial_objects, "Blocks at start")->capture_default_str();
  over_cmd->add_option("--max-duration", over.max_duration, "Simulated seconds per run")->capture_default_str();
  over_cmd->add_option("--rate", over.tick_rate, "Lockstep tick rate in Hz")->capture_default_str();
  over_cmd->add_option("--deadline", over.deadline, "Mean seconds per tick before deadline-miss (0: one period)");
  over_cmd->add_option("--report", over_report, "Write the report here");
  over_cmd->add_option("--min-objects", over_thresholds.min_objects, "Fail when a run ends below this count");

  CLI11_PARSE(app, argc, argv);

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  try {
    if (*controller) return run_controller(ctl);
    if (*client) return run_client(cli);
    if (*freq_cmd) return finish_bench(bench::run_frequency_bench(freq), freq_report, freq_thresholds);
    if (*over_cmd) return finish_bench(bench::run_overload_bench(over), over_report, over_thresholds);
  } catch (const Error& e) {
    std::cerr << "teleop: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
