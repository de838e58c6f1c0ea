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

#include "oignon/openalex_client.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

#include "oignon/errors.hpp"
#include "oignon/openalex_format.hpp"
#include "oignon/snapshot.hpp"

namespace oignon {

namespace {

constexpr std::size_t kBatchSize = 50;
constexpr std::string_view kAuthorSelect = "id,display_name,works_count";

std::string join_ids(const std::vector<WorkId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out.push_back('|');
    out += id.str();
  }
  return out;
}

Work parse_work(const nlohmann::json& record, const std::string& context) {
  try {
    return openalex::work_from_json(record);
  } catch (const std::exception& e) {
    throw TransportError("malformed work record from " + context + ": " + e.what());
  }
}

}  // namespace

void ClientConfig::validate() const {
  if (base_url.empty()) throw std::invalid_argument("base_url must not be empty");
  if (!(max_requests_per_second > 0.0)) {
    throw std::invalid_argument("max_requests_per_second must be positive");
  }
  if (max_pages_per_listing < 1) throw std::invalid_argument("max_pages_per_listing must be >= 1");
  if (page_size < 1 || page_size > 200) throw std::invalid_argument("page_size must be in [1, 200]");
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
}

FetchStats operator-(const FetchStats& a, const FetchStats& b) {
  return FetchStats{a.network_requests - b.network_requests, a.cache_hits - b.cache_hits,
                    a.works_fetched - b.works_fetched, a.truncated_listings - b.truncated_listings};
}

void sort_listing(std::vector<Work>& works) {
  std::sort(works.begin(), works.end(), [](const Work& a, const Work& b) {
    if (a.global_citation_count != b.global_citation_count) {
      return a.global_citation_count > b.global_citation_count;
    }
    return a.id < b.id;
  });
  auto dup = std::unique(works.begin(), works.end(),
                         [](const Work& a, const Work& b) { return a.id == b.id; });
  works.erase(dup, works.end());
}

OpenAlexClient::OpenAlexClient(ClientConfig config, std::shared_ptr<Transport> transport,
                               std::shared_ptr<Clock> clock)
    : config_(std::move(config)), transport_(std::move(transport)), clock_(std::move(clock)) {
  config_.validate();
  if (!clock_) clock_ = std::make_shared<SystemClock>();
  if (config_.offline_snapshot) {
    auto load = load_snapshot(*config_.offline_snapshot);
    for (auto& warning : load.warnings) note("snapshot " + warning);
    emulator_ = std::make_unique<OpenAlexEmulator>(std::move(load.works));
    return;
  }
  if (!transport_) transport_ = std::make_shared<HttplibTransport>();
  if (!config_.cache_dir.empty()) cache_.emplace(config_.cache_dir, config_.cache_ttl);
  limiter_ = std::make_unique<RateLimiter>(config_.max_requests_per_second, *clock_);
}

FetchStats OpenAlexClient::stats() const {
  return FetchStats{network_requests_.load(), cache_hits_.load(), works_fetched_.load(),
                    truncated_listings_.load()};
}

std::vector<std::string> OpenAlexClient::take_diagnostics() {
  std::lock_guard lock(diagnostics_mutex_);
  return std::exchange(diagnostics_, {});
}

void OpenAlexClient::note(std::string message) {
  std::lock_guard lock(diagnostics_mutex_);
  diagnostics_.push_back(std::move(message));
}

std::string OpenAlexClient::work_cache_key(const WorkId& id) const {
  return url::build(config_.base_url, "/works/" + url::encode_path(id.str()),
                    {{"select", std::string(openalex::kWorkSelect)}});
}

std::string OpenAlexClient::request_with_retry(const std::string& request_url) {
  bool rate_limited = false;
  std::string last_failure;
  for (std::size_t attempt = 0; attempt <= kRetryBackoff.size(); ++attempt) {
    if (attempt > 0) clock_->sleep_for(kRetryBackoff[attempt - 1]);
    limiter_->acquire();
    ++network_requests_;

    HttpResponse response;
    try {
      response = transport_->get(request_url);
    } catch (const TransportError& e) {
      rate_limited = false;
      last_failure = e.what();
      continue;
    }
    if (response.status >= 200 && response.status < 300) return std::move(response.body);
    if (response.status == 404) throw NotFoundError("not found: " + request_url);
    if (response.status == 429 || response.status >= 500) {
      rate_limited = response.status == 429;
      last_failure = "HTTP " + std::to_string(response.status) + " from " + request_url;
      continue;
    }
    throw TransportError("HTTP " + std::to_string(response.status) + " from " + request_url);
  }
  if (rate_limited) throw RateLimitedError("rate limited after retries: " + last_failure);
  throw TransportError("giving up after retries: " + last_failure);
}

std::string OpenAlexClient::get_body(const std::string& path, url::QueryParams params) {
  const auto key = url::build(config_.base_url, path, params);
  if (emulator_) {
    auto response = emulator_->get(key);
    if (response.status == 404) throw NotFoundError("not found in snapshot: " + path);
    if (response.status < 200 || response.status >= 300) {
      throw TransportError("snapshot query failed: " + response.body);
    }
    return std::move(response.body);
  }
  if (cache_) {
    if (auto cached = cache_->get(key)) {
      ++cache_hits_;
      return std::move(*cached);
    }
  }
  if (config_.mailto) params.emplace_back("mailto", *config_.mailto);
  auto body = request_with_retry(url::build(config_.base_url, path, std::move(params)));
  if (cache_) cache_->put(key, body);
  return body;
}

nlohmann::json OpenAlexClient::get_json(const std::string& path, url::QueryParams params) {
  const auto body = get_body(path, std::move(params));
  auto parsed = nlohmann::json::parse(body, nullptr, false);
  if (parsed.is_discarded()) throw TransportError("malformed JSON response for " + path);
  return parsed;
}

void OpenAlexClient::remember(const Work& work) {
  ++works_fetched_;
  if (cache_) cache_->put(work_cache_key(work.id), openalex::work_to_json(work).dump());
}

Work OpenAlexClient::resolve_work(std::string_view identifier) {
  const auto lookup = openalex::parse_work_identifier(identifier);
  const bool by_id = lookup.kind == openalex::WorkLookup::Kind::Id;
  const std::string path =
      by_id ? "/works/" + url::encode_path(lookup.key) : "/works/doi:" + url::encode_path(lookup.key);
  auto work = parse_work(get_json(path, {{"select", std::string(openalex::kWorkSelect)}}), path);
  if (by_id) {
    ++works_fetched_;
  } else {
    remember(work);
  }
  return work;
}

OpenAlexClient::Listing OpenAlexClient::list_works(const std::string& filter, std::size_t want) {
  Listing listing;
  std::string cursor = "*";
  for (std::size_t page = 0; page < config_.max_pages_per_listing; ++page) {
    const auto body = get_json("/works", {{"filter", filter},
                                          {"per-page", std::to_string(config_.page_size)},
                                          {"cursor", cursor},
                                          {"select", std::string(openalex::kWorkSelect)}});
    const auto& meta = body.value("meta", nlohmann::json::object());
    if (page == 0) listing.total = meta.value("count", std::uint64_t{0});
    if (const auto results = body.find("results"); results != body.end() && results->is_array()) {
      for (const auto& record : *results) {
        listing.works.push_back(parse_work(record, "/works?filter=" + filter));
        remember(listing.works.back());
      }
    }
    const auto next = meta.find("next_cursor");
    listing.exhausted = next == meta.end() || !next->is_string() || next->get<std::string>().empty();
    if (listing.exhausted || listing.works.size() >= want) break;
    cursor = next->get<std::string>();
  }
  return listing;
}

std::vector<Work> OpenAlexClient::fetch_citers(const WorkId& id, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("citer cap must be >= 1");
  auto listing = list_works("cites:" + id.str(), cap);
  sort_listing(listing.works);
  const auto available = std::max<std::uint64_t>(listing.total, listing.works.size());
  if (listing.works.size() > cap) {
    listing.works.erase(listing.works.begin() + static_cast<std::ptrdiff_t>(cap), listing.works.end());
  }
  if (available > listing.works.size()) ++truncated_listings_;
  return std::move(listing.works);
}

std::vector<Work> OpenAlexClient::fetch_batch(const std::vector<WorkId>& ids) {
  const auto body = get_json("/works", {{"filter", "openalex_id:" + join_ids(ids)},
                                        {"per-page", std::to_string(kBatchSize)},
                                        {"select", std::string(openalex::kWorkSelect)}});
  std::vector<Work> works;
  if (const auto results = body.find("results"); results != body.end() && results->is_array()) {
    for (const auto& record : *results) {
      works.push_back(parse_work(record, "/works?filter=openalex_id"));
      remember(works.back());
    }
  }
  return works;
}

FetchManyResult OpenAlexClient::fetch_many(const std::set<WorkId>& ids) {
  FetchManyResult result;
  std::vector<WorkId> pending;
  for (const auto& id : ids) {
    if (cache_) {
      if (auto cached = cache_->get(work_cache_key(id))) {
        auto parsed = nlohmann::json::parse(*cached, nullptr, false);
        if (!parsed.is_discarded()) {
          try {
            result.works.emplace(id, openalex::work_from_json(parsed));
            ++cache_hits_;
            continue;
          } catch (const std::invalid_argument&) {
            // fall through to a fresh fetch
          }
        }
      }
    }
    pending.push_back(id);
  }

  auto run_batches = [this, &result](const std::vector<WorkId>& todo) {
    std::vector<std::vector<WorkId>> batches;
    for (std::size_t i = 0; i < todo.size(); i += kBatchSize) {
      batches.emplace_back(todo.begin() + static_cast<std::ptrdiff_t>(i),
                           todo.begin() + static_cast<std::ptrdiff_t>(std::min(todo.size(), i + kBatchSize)));
    }
    std::vector<std::vector<Work>> outputs(batches.size());
    std::vector<std::exception_ptr> errors(batches.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < batches.size();) {
        try {
          outputs[i] = fetch_batch(batches[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const auto threads = std::min(config_.max_in_flight, batches.size());
    if (threads <= 1 || emulator_) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
    const std::set<WorkId> wanted(todo.begin(), todo.end());
    for (auto& batch : outputs) {
      for (auto& work : batch) {
        if (wanted.contains(work.id)) result.works.insert_or_assign(work.id, std::move(work));
      }
    }
  };

  auto still_missing = [&result](const std::vector<WorkId>& todo) {
    std::vector<WorkId> out;
    for (const auto& id : todo) {
      if (!result.works.contains(id)) out.push_back(id);
    }
    return out;
  };

  if (!pending.empty()) run_batches(pending);
  auto missing = still_missing(pending);
  if (!missing.empty()) {
    run_batches(missing);
    missing = still_missing(missing);
  }
  if (!missing.empty()) {
    note(std::to_string(missing.size()) + " requested works could not be fetched");
  }
  result.missing = std::move(missing);
  return result;
}

std::vector<Work> OpenAlexClient::fetch_author_works(std::string_view author) {
  std::string query(author);
  query.erase(0, query.find_first_not_of(" \t\r\n"));
  query.erase(query.find_last_not_of(" \t\r\n") + 1);
  if (query.empty()) throw std::invalid_argument("empty author query");

  auto author_id = openalex::parse_author_id(query);
  if (!author_id) {
    const auto body = get_json("/authors", {{"search", query}, {"select", std::string(kAuthorSelect)}});
    const auto results = body.value("results", nlohmann::json::array());
    const nlohmann::json* best = nullptr;
    std::string best_id;
    for (const auto& candidate : results) {
      const auto id = openalex::parse_author_id(candidate.value("id", ""));
      if (!id) continue;
      const auto count = candidate.value("works_count", std::uint64_t{0});
      const auto best_count = best ? best->value("works_count", std::uint64_t{0}) : 0;
      if (!best || count > best_count || (count == best_count && *id < best_id)) {
        best = &candidate;
        best_id = *id;
      }
    }
    if (!best) throw NotFoundError("no author matches \"" + query + "\"");
    if (results.size() > 1) {
      note("author query \"" + query + "\" matched " + std::to_string(results.size()) +
           " authors; using " + best_id + " (" + best->value("display_name", "") + ", " +
           std::to_string(best->value("works_count", std::uint64_t{0})) + " works)");
    }
    author_id = best_id;
  }

  auto listing = list_works("author.id:" + *author_id,
                            config_.max_pages_per_listing * config_.page_size);
  if (listing.works.empty()) throw NotFoundError("no works for author " + *author_id);
  if (!listing.exhausted) ++truncated_listings_;
  sort_listing(listing.works);
  return std::move(listing.works);
}

}  // namespace oignon
