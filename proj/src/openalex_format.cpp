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

#include "oignon/openalex_format.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace oignon::openalex {

namespace {

constexpr std::string_view kEntityPrefix = "https://openalex.org/";
constexpr std::string_view kDoiPrefix = "https://doi.org/";

constexpr std::string_view kDoiPrefixes[] = {
    "https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/",
    "doi.org/",         "dx.doi.org/",     "doi:",
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_entity_id(std::string_view s, char kind) {
  if (s.size() < 2 || std::toupper(static_cast<unsigned char>(s[0])) != kind) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Strips "https://openalex.org/" (any scheme, any case of the host).
std::string_view strip_entity_prefix(std::string_view s) {
  const auto lowered = lower(s.substr(0, std::min(s.size(), kEntityPrefix.size())));
  if (lowered == kEntityPrefix) return s.substr(kEntityPrefix.size());
  if (lowered.starts_with("http://openalex.org/")) return s.substr(20);
  return s;
}

}  // namespace

std::string normalize_doi(std::string_view doi) {
  std::string out = lower(trim(doi));
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (auto prefix : kDoiPrefixes) {
      if (out.starts_with(prefix)) {
        out.erase(0, prefix.size());
        stripped = true;
      }
    }
  }
  return out;
}

WorkLookup parse_work_identifier(std::string_view identifier) {
  identifier = trim(identifier);
  if (identifier.empty()) throw std::invalid_argument("empty work identifier");

  const auto bare = strip_entity_prefix(identifier);
  if (is_entity_id(bare, 'W')) {
    return WorkLookup{WorkLookup::Kind::Id, WorkId::canonical(bare).str()};
  }
  auto doi = normalize_doi(identifier);
  if (doi.starts_with("10.") && doi.find('/') != std::string::npos) {
    return WorkLookup{WorkLookup::Kind::Doi, std::move(doi)};
  }
  throw std::invalid_argument("not a work id or DOI: " + std::string(identifier));
}

std::optional<std::string> parse_author_id(std::string_view query) {
  const auto bare = strip_entity_prefix(trim(query));
  if (!is_entity_id(bare, 'A')) return std::nullopt;
  std::string id(bare);
  id.front() = 'A';
  return id;
}

Work work_from_json(const nlohmann::json& record) {
  if (!record.is_object()) throw std::invalid_argument("work record is not an object");
  const auto id_field = record.find("id");
  if (id_field == record.end() || !id_field->is_string()) {
    throw std::invalid_argument("work record without id");
  }
  Work work = Work::stub(WorkId::canonical(id_field->get<std::string>()));

  for (const char* key : {"display_name", "title"}) {
    if (auto it = record.find(key); it != record.end() && it->is_string()) {
      work.title = it->get<std::string>();
      break;
    }
  }
  if (auto it = record.find("publication_year"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw std::invalid_argument("publication_year is not an integer");
    work.publication_year = it->get<int>();
  }
  if (auto it = record.find("doi"); it != record.end() && it->is_string()) {
    auto doi = normalize_doi(it->get<std::string>());
    if (!doi.empty()) work.doi = std::move(doi);
  }
  if (auto it = record.find("authorships"); it != record.end() && it->is_array()) {
    for (const auto& authorship : *it) {
      const auto author = authorship.find("author");
      if (author == authorship.end() || !author->is_object()) continue;
      work.authors.push_back(author->value("display_name", ""));
      const auto aid = author->find("id");
      work.author_ids.push_back(aid != author->end() && aid->is_string()
                                    ? parse_author_id(aid->get<std::string>()).value_or("")
                                    : "");
    }
    if (std::all_of(work.author_ids.begin(), work.author_ids.end(),
                    [](const std::string& s) { return s.empty(); })) {
      work.author_ids.clear();
    }
  }
  if (auto it = record.find("cited_by_count"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      throw std::invalid_argument("cited_by_count is not a non-negative integer");
    }
    work.global_citation_count = it->get<std::uint64_t>();
  }
  if (auto it = record.find("referenced_works"); it != record.end() && it->is_array()) {
    for (const auto& ref : *it) {
      if (!ref.is_string()) throw std::invalid_argument("referenced_works entry is not a string");
      auto rid = WorkId::canonical(ref.get<std::string>());
      if (rid != work.id) work.referenced_works.insert(std::move(rid));
    }
  }
  return work;
}

nlohmann::ordered_json work_to_json(const Work& work) {
  nlohmann::ordered_json j;
  j["id"] = std::string(kEntityPrefix) + work.id.str();
  j["display_name"] = work.title;
  j["publication_year"] =
      work.publication_year ? nlohmann::ordered_json(*work.publication_year) : nullptr;
  j["doi"] = work.doi ? nlohmann::ordered_json(std::string(kDoiPrefix) + *work.doi) : nullptr;
  auto authorships = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < work.authors.size(); ++i) {
    nlohmann::ordered_json author;
    const std::string aid = i < work.author_ids.size() ? work.author_ids[i] : "";
    author["id"] = aid.empty() ? nlohmann::ordered_json(nullptr)
                               : nlohmann::ordered_json(std::string(kEntityPrefix) + aid);
    author["display_name"] = work.authors[i];
    authorships.push_back({{"author", std::move(author)}});
  }
  j["authorships"] = std::move(authorships);
  j["cited_by_count"] = work.global_citation_count;
  auto refs = nlohmann::ordered_json::array();
  for (const auto& ref : work.referenced_works) refs.push_back(std::string(kEntityPrefix) + ref.str());
  j["referenced_works"] = std::move(refs);
  return j;
}

}  // namespace oignon::openalex
