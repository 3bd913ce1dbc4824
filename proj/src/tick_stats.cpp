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

#include "teleop/tick_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace teleop {

FrequencySummary summarize_ticks(std::span<const double> timestamps) {
  FrequencySummary s;
  if (timestamps.size() < 2) return s;
  s.samples = timestamps.size() - 1;
  s.duration = timestamps.back() - timestamps.front();
  if (s.duration > 0.0) s.avg_hz = static_cast<double>(s.samples) / s.duration;

  std::vector<double> rates;
  rates.reserve(s.samples);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const double dt = timestamps[i] - timestamps[i - 1];
    rates.push_back(dt > 0.0 ? 1.0 / dt : std::numeric_limits<double>::infinity());
  }
  const auto rank = static_cast<std::size_t>(std::ceil(0.01 * static_cast<double>(rates.size())));
  const std::size_t index = rank == 0 ? 0 : rank - 1;
  std::nth_element(rates.begin(), rates.begin() + static_cast<std::ptrdiff_t>(index), rates.end());
  // A single long stall can sit below the percentile rank yet dominate the
  // mean; the low is never reported above the average.
  s.low1_hz = std::min(rates[index], s.avg_hz);
  return s;
}

TickStats::TickStats(std::size_t capacity) : ring_(std::max<std::size_t>(capacity, 2)) {}

void TickStats::record(double timestamp) {
  ring_[head_] = timestamp;
  head_ = (head_ + 1) % ring_.size();
  count_ = std::min(count_ + 1, ring_.size());
}

FrequencySummary TickStats::summary() const {
  std::vector<double> ordered;
  ordered.reserve(count_);
  const std::size_t start = (head_ + ring_.size() - count_) % ring_.size();
  for (std::size_t i = 0; i < count_; ++i) ordered.push_back(ring_[(start + i) % ring_.size()]);
  return summarize_ticks(ordered);
}

}  // namespace teleop
