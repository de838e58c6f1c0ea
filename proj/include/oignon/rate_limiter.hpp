// Copyright 2026 The Oignon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <deque>
#include <mutex>

#include "oignon/clock.hpp"

namespace oignon {

/// Sliding-window limiter: no window of length `window()` ever contains more
/// than `capacity()` grants. For rates of one or more per second the window is
/// exactly one second.
class RateLimiter {
 public:
  /// Throws std::invalid_argument unless requests_per_second > 0.
  RateLimiter(double requests_per_second, Clock& clock);

  /// Blocks (through the clock) until a request may be issued.
  void acquire();

  std::size_t capacity() const noexcept { return capacity_; }
  Clock::duration window() const noexcept { return window_; }

 private:
  Clock& clock_;
  std::size_t capacity_;
  Clock::duration window_;
  std::mutex mutex_;
  std::deque<Clock::time_point> grants_;
};

/// Delays before retry 1, 2 and 3 of a request that hit 429, 5xx or a
/// connection failure.
inline constexpr std::array<std::chrono::seconds, 3> kRetryBackoff = {
    std::chrono::seconds(1), std::chrono::seconds(2), std::chrono::seconds(4)};

}  // namespace oignon
