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
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "oignon/export.hpp"
#include "oignon/graph_builder.hpp"
#include "oignon/layout.hpp"

namespace httplib {
class Server;
}

namespace oignon {

struct BuildRequest {
  enum class Mode { Paper, Author };
  Mode mode = Mode::Paper;
  std::string identifier;
  GraphConfig graph;
  LayoutConfig layout;
};

/// Applies the overrides of a POST /api/build body to `base`:
///   {"identifier": "...", "mode": "paper" | "author",
///    "config": {"roots", "branches", "branch_seed_cap", "candidate_pool_cap",
///               "half_life", "reference_year"}}
/// Throws std::invalid_argument on malformed bodies.
BuildRequest parse_build_request(std::string_view body, const BuildRequest& base);

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Request handling behind the HTTP API, independent of the socket layer.
///
/// Rebuilds are serialized; readers always see either the previous complete
/// document or the new one.
class GraphService {
 public:
  /// Produces canonical document bytes; may throw any library error.
  using Builder = std::function<std::string(const BuildRequest&)>;

  GraphService(Builder builder, BuildRequest defaults);

  /// Installs a document directly. Throws std::invalid_argument when it does
  /// not parse.
  void set_document(std::string bytes);

  /// GET /api/graph
  HttpReply graph() const;
  /// POST /api/build
  HttpReply build(std::string_view body);
  /// GET /api/work/{id}
  HttpReply work(std::string_view id) const;

 private:
  struct State {
    std::string bytes;
    GraphDocument document;
  };

  Builder builder_;
  BuildRequest defaults_;
  std::mutex build_mutex_;
  mutable std::shared_mutex state_mutex_;
  std::shared_ptr<const State> state_;
};

/// {"code": ..., "message": ...}
std::string error_body(std::string_view code, std::string_view message);

/// cpp-httplib front end for a GraphService. Static files under `ui_dir` are
/// served at "/"; without one, "/" returns a short placeholder page.
class GraphServer {
 public:
  GraphServer(GraphService& service, std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~GraphServer();

  GraphServer(const GraphServer&) = delete;
  GraphServer& operator=(const GraphServer&) = delete;

  /// Returns false when the port cannot be bound. Port 0 picks a free port.
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }
  /// Blocks until stop() is called. Returns at once if stop() came first.
  void listen();
  /// Safe to call from any thread, before or during listen().
  void stop();

 private:
  GraphService& service_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
  std::mutex run_mutex_;
  bool stop_requested_ = false;
  std::atomic<bool> listening_{false};
};

}  // namespace oignon
