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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oignon/clock.hpp"
#include "oignon/corpus.hpp"
#include "oignon/disk_cache.hpp"
#include "oignon/http.hpp"
#include "oignon/openalex_emulator.hpp"
#include "oignon/rate_limiter.hpp"

namespace oignon {

struct ClientConfig {
  std::string base_url = "https://api.openalex.org";
  /// Sent as the `mailto` query parameter (OpenAlex polite pool).
  std::optional<std::string> mailto;
  double max_requests_per_second = 5.0;
  std::size_t max_pages_per_listing = 10;
  std::size_t page_size = 200;
  /// Empty disables the response cache.
  std::filesystem::path cache_dir;
  std::chrono::seconds cache_ttl = std::chrono::days(30);
  /// When set, every request is answered from this corpus file and the
  /// network transport is never used.
  std::optional<std::filesystem::path> offline_snapshot;
  std::size_t max_in_flight = 4;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct FetchStats {
  std::uint64_t network_requests = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t works_fetched = 0;
  std::uint64_t truncated_listings = 0;

  friend bool operator==(const FetchStats&, const FetchStats&) = default;
};

FetchStats operator-(const FetchStats& a, const FetchStats& b);

struct FetchManyResult {
  std::map<WorkId, Work> works;
  /// Requested ids that are still unknown after one retry, ascending.
  std::vector<WorkId> missing;
};

/// OpenAlex API client.
///
/// Every successful GET body is cached under its canonical URL (sorted query
/// parameters, `mailto` excluded). Individual work records that arrive inside
/// listings are also cached under the URL of the single-work endpoint, so
/// later lookups of the same id are served locally.
///
/// Requests are rate limited and retried after 1 s, 2 s and 4 s on HTTP 429,
/// 5xx and connection failures; 404 fails immediately with NotFoundError.
///
/// Listings are re-ordered client-side by global citation count descending,
/// then id ascending.
///
/// All public member functions are safe to call concurrently.
class OpenAlexClient {
 public:
  /// `transport` defaults to HttplibTransport and `clock` to SystemClock.
  /// Throws SnapshotError when an offline snapshot cannot be loaded.
  explicit OpenAlexClient(ClientConfig config, std::shared_ptr<Transport> transport = nullptr,
                          std::shared_ptr<Clock> clock = nullptr);

  /// Accepts a WorkId, an OpenAlex work URL, a DOI or a DOI URL.
  Work resolve_work(std::string_view identifier);

  /// Up to `cap` works citing `id`. Counts a truncated listing when more
  /// citers exist than were returned.
  std::vector<Work> fetch_citers(const WorkId& id, std::size_t cap);

  /// Batched metadata lookup, at most 50 ids per request.
  FetchManyResult fetch_many(const std::set<WorkId>& ids);

  /// All works of an author given by id ("A123") or by name. Name queries
  /// pick the matching author with the most works.
  std::vector<Work> fetch_author_works(std::string_view author);

  FetchStats stats() const;
  /// Returns and clears accumulated human-readable notes (ambiguous author
  /// matches, missing ids, ...).
  std::vector<std::string> take_diagnostics();

  const ClientConfig& config() const noexcept { return config_; }
  bool offline() const noexcept { return emulator_ != nullptr; }

  /// Cache key of the single-work endpoint for `id`.
  std::string work_cache_key(const WorkId& id) const;

 private:
  struct Listing {
    std::vector<Work> works;
    std::uint64_t total = 0;
    bool exhausted = true;
  };

  std::string get_body(const std::string& path, url::QueryParams params);
  std::string request_with_retry(const std::string& url);
  nlohmann::json get_json(const std::string& path, url::QueryParams params);
  Listing list_works(const std::string& filter, std::size_t want);
  std::vector<Work> fetch_batch(const std::vector<WorkId>& ids);
  void remember(const Work& work);
  void note(std::string message);

  ClientConfig config_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<Clock> clock_;
  std::unique_ptr<OpenAlexEmulator> emulator_;
  std::optional<DiskCache> cache_;
  std::unique_ptr<RateLimiter> limiter_;

  std::atomic<std::uint64_t> network_requests_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::uint64_t> works_fetched_{0};
  std::atomic<std::uint64_t> truncated_listings_{0};

  std::mutex diagnostics_mutex_;
  std::vector<std::string> diagnostics_;
};

/// Sorts by global citation count descending, then id ascending, and drops
/// repeated ids.
void sort_listing(std::vector<Work>& works);

}  // namespace oignon
