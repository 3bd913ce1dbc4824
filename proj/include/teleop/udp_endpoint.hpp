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

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

#include <netinet/in.h>

#include "teleop/wire_protocol.hpp"

namespace teleop {

/// IPv4 host:port pair. Parsed from "host:port" or ":port" (any address).
struct SocketAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  static SocketAddress parse(const std::string& text);
  std::string to_string() const;
};

struct TransportStats {
  std::uint64_t datagrams_sent = 0;
  std::uint64_t last_datagram_bytes = 0;
  std::uint64_t send_errors = 0;
  std::uint64_t injected_drops = 0;
  std::uint64_t datagrams_received = 0;
  std::uint64_t delivered = 0;
  std::uint64_t stale_discarded = 0;
  std::uint64_t decode_errors = 0;
};

/// One end of the latest-wins UDP link. Each outgoing datagram carries the
/// next value of a per-endpoint sequence counter; receive_latest delivers
/// only messages newer than anything already delivered.
///
/// Send and receive may run on different threads. close() must be called by
/// the owner once neither is in flight.
class UdpEndpoint {
 public:
  // Binds a non-blocking datagram socket. Port 0 picks an ephemeral port.
  explicit UdpEndpoint(const SocketAddress& local);
  ~UdpEndpoint();

  UdpEndpoint(const UdpEndpoint&) = delete;
  UdpEndpoint& operator=(const UdpEndpoint&) = delete;

  void set_peer(const SocketAddress& peer);
  // True once a peer was configured or a valid datagram told us who to answer.
  bool has_peer() const;
  std::uint16_t local_port() const;

  // Returns the sequence number stamped on the datagram. Nothing is emitted
  // (and no sequence number is consumed) when encoding fails.
  std::uint32_t send(const SceneUpdateMessage& msg);
  std::uint32_t send(const GoalCommandMessage& msg);

  std::optional<Message> receive_latest();

  // Fault injection: when set, called once per send; returning true drops
  // the datagram after its sequence number was assigned.
  void set_drop_filter(std::function<bool()> filter);

  void close();
  bool closed() const { return closed_.load(); }

  TransportStats stats() const;

 private:
  std::uint32_t send_bytes(std::vector<std::uint8_t> bytes);

  int fd_ = -1;
  std::atomic<bool> closed_{false};

  // send side
  std::uint32_t next_seq_ = 0;
  mutable std::mutex peer_mutex_;
  std::optional<sockaddr_in> peer_;         // configured
  std::optional<sockaddr_in> reply_to_;     // sender of the last delivered message
  std::function<bool()> drop_filter_;
  std::atomic<std::uint64_t> sent_{0}, last_bytes_{0}, send_errors_{0}, injected_drops_{0};

  // receive side
  std::optional<std::uint32_t> last_delivered_;
  std::atomic<std::uint64_t> received_{0}, delivered_{0}, stale_{0}, decode_errors_{0};
};

}  // namespace teleop
