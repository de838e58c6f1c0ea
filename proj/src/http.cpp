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

#include "oignon/http.hpp"

#include <algorithm>
#include <cctype>

#include <httplib.h>

#include "oignon/errors.hpp"

namespace oignon {

namespace {

bool keep_literal(unsigned char c, bool keep_slash) {
  if (keep_slash && c == '/') return true;
  return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ':' ||
         c == '|' || c == ',' || c == '*';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

HttplibTransport::HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

HttpResponse HttplibTransport::get(const std::string& full_url) {
  const auto scheme_end = full_url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("not an absolute URL: " + full_url);
  const auto path_start = full_url.find('/', scheme_end + 3);
  const std::string origin = full_url.substr(0, path_start);
  const std::string target = path_start == std::string::npos ? "/" : full_url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  auto result = client.Get(target);
  if (!result) {
    throw TransportError("GET " + full_url + " failed: " + httplib::to_string(result.error()));
  }
  return HttpResponse{result->status, std::move(result->body)};
}

namespace url {

namespace {

std::string encode_impl(std::string_view raw, bool keep_slash) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (keep_literal(c, keep_slash)) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace

std::string encode(std::string_view raw) { return encode_impl(raw, false); }

std::string encode_path(std::string_view raw) { return encode_impl(raw, true); }

std::string decode(std::string_view encoded) {
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    const char c = encoded[i];
    if (c == '%' && i + 2 < encoded.size()) {
      const int hi = hex_value(encoded[i + 1]);
      const int lo = hex_value(encoded[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(c == '+' ? ' ' : c);
  }
  return out;
}

Parts parse(std::string_view url) {
  Parts parts;
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) {
    const auto path_start = url.find('/', scheme + 3);
    parts.origin = std::string(url.substr(0, path_start));
    url = path_start == std::string_view::npos ? std::string_view{} : url.substr(path_start);
  }
  const auto qmark = url.find('?');
  parts.path = decode(url.substr(0, qmark));
  if (parts.path.empty()) parts.path = "/";
  if (qmark == std::string_view::npos) return parts;

  std::string_view query = url.substr(qmark + 1);
  while (!query.empty()) {
    const auto amp = query.find('&');
    const auto item = query.substr(0, amp);
    if (!item.empty()) {
      const auto eq = item.find('=');
      parts.query.emplace_back(decode(item.substr(0, eq)),
                               eq == std::string_view::npos ? "" : decode(item.substr(eq + 1)));
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return parts;
}

std::string build(std::string_view base, std::string_view path, QueryParams params) {
  std::sort(params.begin(), params.end());
  std::string out(base);
  while (!out.empty() && out.back() == '/') out.pop_back();
  out += path;
  char sep = '?';
  for (const auto& [key, value] : params) {
    out.push_back(sep);
    out += encode(key);
    out.push_back('=');
    out += encode(value);
    sep = '&';
  }
  return out;
}

std::string param(const QueryParams& params, std::string_view key) {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace url

}  // namespace oignon
