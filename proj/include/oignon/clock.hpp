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

#include <chrono>
#include <mutex>

namespace oignon {

/// Monotonic time source that can also block. Rate limiting and retry
/// backoff go through it so tests can run without real sleeps.
class Clock {
 public:
  using duration = std::chrono::steady_clock::duration;
  using time_point = std::chrono::steady_clock::time_point;

  virtual ~Clock() = default;
  virtual time_point now() const = 0;
  virtual void sleep_until(time_point deadline) = 0;

  void sleep_for(duration d) { sleep_until(now() + d); }
};

class SystemClock final : public Clock {
 public:
  time_point now() const override { return std::chrono::steady_clock::now(); }
  void sleep_until(time_point deadline) override;
};

/// Virtual clock: sleeping advances time instantly. Thread-safe.
class ManualClock final : public Clock {
 public:
  time_point now() const override;
  void sleep_until(time_point deadline) override;
  void advance(duration d);

  /// Total virtual time spent in sleep_until.
  duration slept() const;

 private:
  mutable std::mutex mutex_;
  time_point now_{};
  duration slept_{};
};

}  // namespace oignon
