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

#include "teleop/error.hpp"

namespace teleop {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OversizeMessage: return "OversizeMessage";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::UnknownType: return "UnknownType";
    case Errc::TruncatedMessage: return "TruncatedMessage";
    case Errc::TrailingBytes: return "TrailingBytes";
    case Errc::NonFiniteField: return "NonFiniteField";
    case Errc::BadQuaternion: return "BadQuaternion";
    case Errc::TransportClosed: return "TransportClosed";
    case Errc::TransportFailure: return "TransportFailure";
    case Errc::RejectedNonFinite: return "RejectedNonFinite";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ChannelClosed: return "ChannelClosed";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace teleop
