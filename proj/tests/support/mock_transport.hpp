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

#include <atomic>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oignon/corpus.hpp"
#include "oignon/http.hpp"
#include "oignon/openalex_client.hpp"

namespace oignon::testing {

/// Forwards to an inner transport and records every URL it sees.
class CountingTransport final : public Transport {
 public:
  explicit CountingTransport(std::shared_ptr<Transport> inner) : inner_(std::move(inner)) {}

  HttpResponse get(const std::string& url) override;

  std::size_t calls() const { return calls_.load(); }
  std::vector<std::string> urls() const;

 private:
  std::shared_ptr<Transport> inner_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> urls_;
};

/// Replays queued responses first (nullopt simulates a connection failure),
/// then forwards to the inner transport. A null inner transport fails.
class ScriptedTransport final : public Transport {
 public:
  explicit ScriptedTransport(std::shared_ptr<Transport> inner = nullptr) : inner_(std::move(inner)) {}

  void push(std::optional<HttpResponse> step);
  HttpResponse get(const std::string& url) override;

 private:
  std::shared_ptr<Transport> inner_;
  std::mutex mutex_;
  std::deque<std::optional<HttpResponse>> script_;
};

/// Online-mode client whose transport is an emulator over `works` and whose
/// clock never really sleeps.
std::unique_ptr<OpenAlexClient> emulated_client(std::vector<Work> works, ClientConfig config = {});

/// Offline-mode client over the synthetic corpus.
std::unique_ptr<OpenAlexClient> synthetic_client();

}  // namespace oignon::testing
