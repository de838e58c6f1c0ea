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

#include "oignon/disk_cache.hpp"

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace oignon {

namespace fs = std::filesystem;

namespace {

// FNV-1a, stable across platforms and runs.
std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

DiskCache::DiskCache(fs::path dir, std::chrono::seconds ttl) : dir_(std::move(dir)), ttl_(ttl) {}

fs::path DiskCache::path_for(std::string_view key) const {
  return dir_ / fmt::format("{:016x}.cache", fnv1a(key));
}

std::optional<std::string> DiskCache::get(std::string_view key) const {
  const auto path = path_for(key);
  std::error_code ec;
  const auto mtime = fs::last_write_time(path, ec);
  if (ec) return std::nullopt;
  if (fs::file_time_type::clock::now() - mtime > ttl_) return std::nullopt;

  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string stored_key;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool DiskCache::put(std::string_view key, std::string_view body) const {
  if (key.find('\n') != std::string_view::npos) return false;
  static std::atomic<std::uint64_t> counter{0};

  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return false;

  const auto target = path_for(key);
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::this_thread::get_id() << '.'
           << counter.fetch_add(1);
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << key << '\n';
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) return false;
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace oignon
