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

#include "oignon/rate_limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace oignon {

void SystemClock::sleep_until(time_point deadline) { std::this_thread::sleep_until(deadline); }

Clock::time_point ManualClock::now() const {
  std::lock_guard lock(mutex_);
  return now_;
}

void ManualClock::sleep_until(time_point deadline) {
  std::lock_guard lock(mutex_);
  if (deadline > now_) {
    slept_ += deadline - now_;
    now_ = deadline;
  }
}

void ManualClock::advance(duration d) {
  std::lock_guard lock(mutex_);
  now_ += d;
}

Clock::duration ManualClock::slept() const {
  std::lock_guard lock(mutex_);
  return slept_;
}

RateLimiter::RateLimiter(double requests_per_second, Clock& clock) : clock_(clock) {
  if (!(requests_per_second > 0.0) || !std::isfinite(requests_per_second)) {
    throw std::invalid_argument("requests per second must be a positive number");
  }
  capacity_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(requests_per_second)));
  const auto seconds = static_cast<double>(capacity_) / requests_per_second;
  window_ = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

void RateLimiter::acquire() {
  Clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    slot = clock_.now();
    if (!grants_.empty()) slot = std::max(slot, grants_.back());
    if (grants_.size() >= capacity_) {
      slot = std::max(slot, grants_[grants_.size() - capacity_] + window_);
    }
    grants_.push_back(slot);
    while (grants_.size() > capacity_) grants_.pop_front();
  }
  clock_.sleep_until(slot);
}

}  // namespace oignon
