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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oignon {

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Blocking GET transport. Implementations must be safe to call from several
/// threads at once and throw TransportError when no response was obtained.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

/// Transport backed by cpp-httplib; supports http and https URLs.
class HttplibTransport final : public Transport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout = std::chrono::seconds(30));

  HttpResponse get(const std::string& url) override;

 private:
  std::chrono::seconds timeout_;
};

namespace url {

using QueryParams = std::vector<std::pair<std::string, std::string>>;

/// Percent-encodes everything except RFC 3986 unreserved characters and the
/// OpenAlex filter punctuation ":|,*".
std::string encode(std::string_view raw);
/// As encode(), but '/' is kept literal.
std::string encode_path(std::string_view raw);
std::string decode(std::string_view encoded);

struct Parts {
  std::string origin;  // "scheme://host[:port]", empty for relative URLs
  std::string path;    // decoded
  QueryParams query;   // decoded, in original order
};

Parts parse(std::string_view url);

/// base + path + "?" + params sorted by key then value. Two requests for the
/// same resource always produce the same string.
std::string build(std::string_view base, std::string_view path, QueryParams params);

/// First value of `key`, or empty.
std::string param(const QueryParams& params, std::string_view key);

}  // namespace url

}  // namespace oignon
