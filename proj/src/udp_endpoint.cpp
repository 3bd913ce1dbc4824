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

#include "teleop/udp_endpoint.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <sys/socket.h>
#include <unistd.h>

#include <array>

#include "teleop/error.hpp"

namespace teleop {
namespace {

sockaddr_in to_sockaddr(const SocketAddress& address) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(address.port);
  const std::string host = address.host.empty() ? "0.0.0.0" : address.host;
  const char* literal = host == "localhost" ? "127.0.0.1" : host.c_str();
  if (inet_pton(AF_INET, literal, &sa.sin_addr) != 1) {
    throw Error(Errc::ConfigError, "not an IPv4 address: " + host);
  }
  return sa;
}

[[noreturn]] void fail(const std::string& what) {
  throw Error(Errc::TransportFailure, what + ": " + std::strerror(errno));
}

}  // namespace

SocketAddress SocketAddress::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::ConfigError, "address needs host:port: " + text);
  SocketAddress out;
  out.host = text.substr(0, colon);
  if (out.host.empty()) out.host = "0.0.0.0";
  const std::string port = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(port, &used);
    if (used != port.size() || value > 65535) throw std::out_of_range(port);
    out.port = static_cast<std::uint16_t>(value);
  } catch (const std::exception&) {
    throw Error(Errc::ConfigError, "bad port in address: " + text);
  }
  return out;
}

std::string SocketAddress::to_string() const { return host + ":" + std::to_string(port); }

UdpEndpoint::UdpEndpoint(const SocketAddress& local) {
  const sockaddr_in sa = to_sockaddr(local);
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) fail("socket");
  // Room for a burst of maximum-size scene updates between drains.
  const int buffer = 4 << 20;
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &buffer, sizeof buffer);
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDBUF, &buffer, sizeof buffer);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof sa) != 0) {
    const int saved = errno;
    ::close(fd_);
    errno = saved;
    fail("bind " + local.to_string());
  }
}

UdpEndpoint::~UdpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpEndpoint::set_peer(const SocketAddress& peer) {
  const sockaddr_in sa = to_sockaddr(peer);
  std::lock_guard lock(peer_mutex_);
  peer_ = sa;
}

bool UdpEndpoint::has_peer() const {
  std::lock_guard lock(peer_mutex_);
  return peer_.has_value() || reply_to_.has_value();
}

std::uint16_t UdpEndpoint::local_port() const {
  sockaddr_in sa{};
  socklen_t len = sizeof sa;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&sa), &len) != 0) return 0;
  return ntohs(sa.sin_port);
}

void UdpEndpoint::set_drop_filter(std::function<bool()> filter) { drop_filter_ = std::move(filter); }

std::uint32_t UdpEndpoint::send(const SceneUpdateMessage& msg) {
  if (closed_) throw Error(Errc::TransportClosed, "send on closed endpoint");
  return send_bytes(wire::encode(msg));
}

std::uint32_t UdpEndpoint::send(const GoalCommandMessage& msg) {
  if (closed_) throw Error(Errc::TransportClosed, "send on closed endpoint");
  return send_bytes(wire::encode(msg));
}

std::uint32_t UdpEndpoint::send_bytes(std::vector<std::uint8_t> bytes) {
  std::optional<sockaddr_in> target;
  {
    std::lock_guard lock(peer_mutex_);
    target = peer_ ? peer_ : reply_to_;
  }
  if (!target) throw Error(Errc::TransportFailure, "no peer address to send to");

  const std::uint32_t seq = next_seq_++;
  // Stamp the sequence number into the header (bytes 4..7, little-endian).
  for (int i = 0; i < 4; ++i) bytes[4 + i] = static_cast<std::uint8_t>(seq >> (8 * i));

  if (drop_filter_ && drop_filter_()) {
    ++injected_drops_;
    return seq;
  }
  const auto n = ::sendto(fd_, bytes.data(), bytes.size(), 0,
                          reinterpret_cast<const sockaddr*>(&*target), sizeof(sockaddr_in));
  if (n != static_cast<ssize_t>(bytes.size())) {
    ++send_errors_;
  } else {
    ++sent_;
    last_bytes_ = bytes.size();
  }
  return seq;
}

std::optional<Message> UdpEndpoint::receive_latest() {
  if (closed_) throw Error(Errc::TransportClosed, "receive on closed endpoint");

  std::array<std::uint8_t, 65536> buffer;
  std::optional<Message> best;
  std::optional<std::uint32_t> best_seq;
  sockaddr_in best_from{};

  for (;;) {
    sockaddr_in from{};
    socklen_t from_len = sizeof from;
    const auto n = ::recvfrom(fd_, buffer.data(), buffer.size(), MSG_DONTWAIT | MSG_TRUNC,
                              reinterpret_cast<sockaddr*>(&from), &from_len);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;  // EAGAIN: drained. Other errors (e.g. ICMP refusals) end the drain too.
    }
    ++received_;
    if (static_cast<std::size_t>(n) > buffer.size()) {
      ++decode_errors_;
      continue;
    }
    Message msg;
    try {
      msg = wire::decode(std::span(buffer.data(), static_cast<std::size_t>(n)));
    } catch (const Error&) {
      ++decode_errors_;
      continue;
    }
    const std::uint32_t seq = std::visit([](const auto& m) { return m.seq; }, msg);
    if ((last_delivered_ && seq <= *last_delivered_) || (best_seq && seq <= *best_seq)) {
      ++stale_;
      continue;
    }
    if (best) ++stale_;
    best = std::move(msg);
    best_seq = seq;
    best_from = from;
  }

  if (best) {
    last_delivered_ = best_seq;
    ++delivered_;
    std::lock_guard lock(peer_mutex_);
    reply_to_ = best_from;
  }
  return best;
}

void UdpEndpoint::close() {
  if (closed_.exchange(true)) return;
  ::close(fd_);
  fd_ = -1;
}

TransportStats UdpEndpoint::stats() const {
  TransportStats s;
  s.datagrams_sent = sent_;
  s.last_datagram_bytes = last_bytes_;
  s.send_errors = send_errors_;
  s.injected_drops = injected_drops_;
  s.datagrams_received = received_;
  s.delivered = delivered_;
  s.stale_discarded = stale_;
  s.decode_errors = decode_errors_;
  return s;
}

}  // namespace teleop
