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

#include "oignon/server.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "oignon/errors.hpp"

namespace oignon {

namespace {

constexpr std::string_view kPlaceholderPage =
    "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>oignon</title></head>\n"
    "<body><p>No viewer assets installed. The graph document is at "
    "<a href=\"/api/graph\">/api/graph</a>.</p></body></html>\n";

template <typename T>
T read_number(const nlohmann::json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  if constexpr (std::is_unsigned_v<T>) {
    if (!it->is_number_unsigned()) throw std::invalid_argument(std::string(key) + " must be >= 0");
  }
  return it->get<T>();
}

}  // namespace

std::string error_body(std::string_view code, std::string_view message) {
  nlohmann::ordered_json j;
  j["code"] = code;
  j["message"] = message;
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

BuildRequest parse_build_request(std::string_view body, const BuildRequest& base) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("request body must be a JSON object");

  BuildRequest request = base;
  const auto identifier = j.find("identifier");
  if (identifier == j.end() || !identifier->is_string() || identifier->get<std::string>().empty()) {
    throw std::invalid_argument("identifier is required");
  }
  request.identifier = identifier->get<std::string>();

  if (const auto mode = j.find("mode"); mode != j.end() && !mode->is_null()) {
    const auto name = mode->is_string() ? mode->get<std::string>() : "";
    if (name == "paper") {
      request.mode = BuildRequest::Mode::Paper;
    } else if (name == "author") {
      request.mode = BuildRequest::Mode::Author;
    } else {
      throw std::invalid_argument("mode must be \"paper\" or \"author\"");
    }
  }

  if (const auto config = j.find("config"); config != j.end() && !config->is_null()) {
    if (!config->is_object()) throw std::invalid_argument("config must be an object");
    auto& g = request.graph;
    g.top_roots_k = read_number(*config, "roots", g.top_roots_k);
    g.top_branches_k = read_number(*config, "branches", g.top_branches_k);
    g.branch_seed_cap = read_number(*config, "branch_seed_cap", g.branch_seed_cap);
    g.candidate_pool_cap = read_number(*config, "candidate_pool_cap", g.candidate_pool_cap);
    g.recency.half_life_years = read_number(*config, "half_life", g.recency.half_life_years);
    g.recency.reference_year = read_number(*config, "reference_year", g.recency.reference_year);
  }
  request.graph.validate();
  return request;
}

GraphService::GraphService(Builder builder, BuildRequest defaults)
    : builder_(std::move(builder)), defaults_(std::move(defaults)) {}

void GraphService::set_document(std::string bytes) {
  auto state = std::make_shared<State>(State{bytes, parse_document(bytes)});
  std::unique_lock lock(state_mutex_);
  state_ = std::move(state);
}

HttpReply GraphService::graph() const {
  std::shared_lock lock(state_mutex_);
  if (!state_) return HttpReply{404, error_body("no_document", "no graph has been built yet")};
  return HttpReply{200, state_->bytes};
}

HttpReply GraphService::work(std::string_view id) const {
  std::shared_ptr<const State> state;
  {
    std::shared_lock lock(state_mutex_);
    state = state_;
  }
  if (!state) return HttpReply{404, error_body("no_document", "no graph has been built yet")};
  if (id.empty()) return HttpReply{404, error_body("not_found", "empty work id")};
  const auto* node = state->document.find(WorkId::canonical(id));
  if (!node) return HttpReply{404, error_body("not_found", "work is not in the graph")};
  return HttpReply{200, canonical_json(to_json(*node))};
}

HttpReply GraphService::build(std::string_view body) {
  BuildRequest request;
  try {
    request = parse_build_request(body, defaults_);
  } catch (const std::invalid_argument& e) {
    return HttpReply{400, error_body("bad_request", e.what())};
  }

  std::lock_guard build_lock(build_mutex_);
  try {
    auto bytes = builder_(request);
    auto state = std::make_shared<State>(State{bytes, parse_document(bytes)});
    std::unique_lock lock(state_mutex_);
    state_ = std::move(state);
    return HttpReply{200, std::move(bytes)};
  } catch (const NotFoundError& e) {
    return HttpReply{404, error_body("not_found", e.what())};
  } catch (const RateLimitedError& e) {
    return HttpReply{503, error_body("rate_limited", e.what())};
  } catch (const TransportError& e) {
    return HttpReply{502, error_body("transport", e.what())};
  } catch (const std::invalid_argument& e) {
    return HttpReply{400, error_body("bad_request", e.what())};
  } catch (const std::exception& e) {
    return HttpReply{500, error_body("internal", e.what())};
  }
}

GraphServer::GraphServer(GraphService& service, std::optional<std::filesystem::path> ui_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which would let a second server
  // share a busy port instead of failing to bind.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server_->Get("/api/graph", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, service_.graph());
  });
  server_->Get(R"(/api/work/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.work(req.matches[1].str()));
  });
  server_->Post("/api/build", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.build(req.body));
  });
  if (!ui_dir || !server_->set_mount_point("/", ui_dir->string())) {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(std::string(kPlaceholderPage), "text/html");
    });
  }
}

GraphServer::~GraphServer() { stop(); }

bool GraphServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

void GraphServer::listen() {
  {
    std::lock_guard lock(run_mutex_);
    if (stop_requested_) return;
    listening_ = true;
  }
  server_->listen_after_bind();
  listening_ = false;
}

void GraphServer::stop() {
  {
    std::lock_guard lock(run_mutex_);
    if (stop_requested_) return;
    stop_requested_ = true;
  }
  // A listener that has entered listen() but not yet started accepting would
  // miss a plain stop, so wait for it to come up first.
  while (listening_ && !server_->is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  server_->stop();
}

}  // namespace oignon
