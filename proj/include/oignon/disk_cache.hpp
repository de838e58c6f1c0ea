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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace oignon {

/// One file per key under a directory. The first line of each file is the key
/// itself, the remainder is the stored body verbatim. Entries older than the
/// TTL (by file modification time) are treated as absent.
///
/// Writes go through a temporary file and a rename, so concurrent readers see
/// either the old entry or the new one.
class DiskCache {
 public:
  DiskCache(std::filesystem::path dir, std::chrono::seconds ttl);

  std::optional<std::string> get(std::string_view key) const;
  /// Returns false when the entry could not be written; the cache is best effort.
  bool put(std::string_view key, std::string_view body) const;

  std::filesystem::path path_for(std::string_view key) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::chrono::seconds ttl_;
};

}  // namespace oignon
