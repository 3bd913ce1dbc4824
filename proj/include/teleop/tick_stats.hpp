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

#include <cstddef>
#include <span>
#include <vector>

namespace teleop {

struct FrequencySummary {
  std::size_t samples = 0;  // intervals between consecutive ticks
  double avg_hz = 0.0;      // samples / elapsed
  double low1_hz = 0.0;     // 1st percentile of per-tick 1/Δt (nearest rank), capped at avg_hz
  double duration = 0.0;    // seconds
};

/// Summary of a sequence of tick-completion timestamps (seconds, ascending).
FrequencySummary summarize_ticks(std::span<const double> timestamps);

/// Fixed-capacity ring of tick timestamps, oldest overwritten first.
class TickStats {
 public:
  explicit TickStats(std::size_t capacity = 512);

  void record(double timestamp);
  FrequencySummary summary() const;
  std::size_t size() const { return count_; }

 private:
  std::vector<double> ring_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

}  // namespace teleop
