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

#include "oignon/openalex_emulator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <json.hpp>

#include "oignon/openalex_format.hpp"

namespace oignon {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kDefaultPerPage = 25;
constexpr std::size_t kMaxPerPage = 200;

HttpResponse error_response(int status, const std::string& message) {
  ordered_json body;
  body["error"] = status == 404 ? "Not Found" : "Bad Request";
  body["message"] = message;
  return HttpResponse{status, body.dump()};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_size(const std::string& text, std::size_t& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

OpenAlexEmulator::OpenAlexEmulator(std::vector<Work> works)
    : index_(CitationIndex::build(works)) {
  for (const auto& [id, work] : index_.works()) {
    if (work.doi) by_doi_.emplace(openalex::normalize_doi(*work.doi), id);
    for (std::size_t i = 0; i < work.author_ids.size(); ++i) {
      const auto& aid = work.author_ids[i];
      if (aid.empty()) continue;
      auto& author = authors_[aid];
      if (author.display_name.empty() && i < work.authors.size()) {
        author.display_name = work.authors[i];
      }
      author.works.insert(id);
    }
  }
}

HttpResponse OpenAlexEmulator::get(const std::string& request_url) {
  const auto parts = url::parse(request_url);
  try {
    if (parts.path == "/works") return list_works(parts.query);
    if (parts.path == "/authors") return search_authors(parts.query);
    if (parts.path.starts_with("/works/")) return single_work(parts.path.substr(7));
  } catch (const std::invalid_argument& e) {
    return error_response(400, e.what());
  }
  return error_response(404, "no route for " + parts.path);
}

HttpResponse OpenAlexEmulator::single_work(const std::string& key) const {
  const Work* work = nullptr;
  if (key.starts_with("doi:")) {
    if (auto it = by_doi_.find(openalex::normalize_doi(key)); it != by_doi_.end()) {
      work = index_.find(it->second);
    }
  } else if (!key.empty()) {
    work = index_.find(WorkId::canonical(key));
  }
  if (!work) return error_response(404, "unknown work " + key);
  return HttpResponse{200, openalex::work_to_json(*work).dump()};
}

HttpResponse OpenAlexEmulator::list_works(const url::QueryParams& query) const {
  const auto filter = url::param(query, "filter");
  const auto colon = filter.find(':');
  if (colon == std::string::npos) return error_response(400, "missing filter");
  const auto key = filter.substr(0, colon);
  const auto value = filter.substr(colon + 1);

  std::set<WorkId> matches;
  if (key == "cites") {
    matches = index_.citers(WorkId::canonical(value));
  } else if (key == "openalex_id") {
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto bar = value.find('|', start);
      const auto item = value.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      if (!item.empty()) {
        const auto id = WorkId::canonical(item);
        if (index_.find(id)) matches.insert(id);
      }
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
  } else if (key == "author.id") {
    const auto aid = openalex::parse_author_id(value).value_or(value);
    if (auto it = authors_.find(aid); it != authors_.end()) matches = it->second.works;
  } else {
    return error_response(400, "unsupported filter " + key);
  }

  std::size_t per_page = kDefaultPerPage;
  if (const auto pp = url::param(query, "per-page"); !pp.empty()) {
    if (!parse_size(pp, per_page) || per_page == 0 || per_page > kMaxPerPage) {
      return error_response(400, "per-page must be within [1, 200]");
    }
  }
  std::size_t offset = 0;
  if (const auto cursor = url::param(query, "cursor"); !cursor.empty() && cursor != "*") {
    if (!parse_size(cursor, offset)) return error_response(400, "bad cursor");
  }

  auto results = ordered_json::array();
  auto it = matches.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(std::min(offset, matches.size())));
  for (std::size_t n = 0; it != matches.end() && n < per_page; ++it, ++n) {
    results.push_back(openalex::work_to_json(*index_.find(*it)));
  }
  const std::size_t next = offset + per_page;

  ordered_json body;
  body["meta"]["count"] = matches.size();
  body["meta"]["per_page"] = per_page;
  body["meta"]["next_cursor"] =
      next < matches.size() ? ordered_json(std::to_string(next)) : ordered_json(nullptr);
  body["results"] = std::move(results);
  return HttpResponse{200, body.dump()};
}

HttpResponse OpenAlexEmulator::search_authors(const url::QueryParams& query) const {
  const auto needle = lower(url::param(query, "search"));
  if (needle.empty()) return error_response(400, "missing search");

  auto results = ordered_json::array();
  for (const auto& [aid, author] : authors_) {
    if (lower(author.display_name).find(needle) == std::string::npos) continue;
    ordered_json entry;
    entry["id"] = "https://openalex.org/" + aid;
    entry["display_name"] = author.display_name;
    entry["works_count"] = author.works.size();
    results.push_back(std::move(entry));
  }
  ordered_json body;
  body["meta"]["count"] = results.size();
  body["results"] = std::move(results);
  return HttpResponse{200, body.dump()};
}

}  // namespace oignon
