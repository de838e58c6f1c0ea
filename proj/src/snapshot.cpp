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

#include "oignon/snapshot.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "oignon/errors.hpp"
#include "oignon/openalex_format.hpp"

namespace oignon {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& record, const char* key) {
  std::vector<std::string> out;
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) return out;
  if (!it->is_array()) throw std::invalid_argument(std::string(key) + " is not a list");
  for (const auto& item : *it) {
    if (!item.is_string()) throw std::invalid_argument(std::string(key) + " holds a non-string");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Work parse_record(const json& record) {
  if (!record.is_object()) throw std::invalid_argument("record is not an object");
  const auto id = record.find("id");
  if (id == record.end() || !id->is_string() || id->get<std::string>().empty()) {
    throw std::invalid_argument("missing id");
  }
  Work work = Work::stub(WorkId::canonical(id->get<std::string>()));

  if (auto it = record.find("title"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) throw std::invalid_argument("title is not a string");
    work.title = it->get<std::string>();
  }
  if (auto it = record.find("publication_year"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw std::invalid_argument("publication_year is not an integer");
    work.publication_year = it->get<int>();
  }
  if (auto it = record.find("doi"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) throw std::invalid_argument("doi is not a string");
    auto doi = openalex::normalize_doi(it->get<std::string>());
    if (!doi.empty()) work.doi = std::move(doi);
  }
  work.authors = string_list(record, "authors");
  if (auto it = record.find("cited_by_count"); it != record.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      throw std::invalid_argument("cited_by_count is not a non-negative integer");
    }
    work.global_citation_count = it->get<std::uint64_t>();
  }
  for (const auto& ref : string_list(record, "referenced_works")) {
    auto rid = WorkId::canonical(ref);
    if (rid != work.id) work.referenced_works.insert(std::move(rid));
  }
  for (const auto& aid : string_list(record, "author_ids")) {
    work.author_ids.push_back(openalex::parse_author_id(aid).value_or(aid));
  }
  return work;
}

}  // namespace

SnapshotLoad parse_snapshot(std::istream& in) {
  SnapshotLoad result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      result.works.push_back(parse_record(json::parse(line)));
    } catch (const std::exception& e) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (result.works.empty()) throw SnapshotError(SnapshotError::Kind::Empty, "snapshot holds no valid records");
  return result;
}

SnapshotLoad load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::Io, "cannot read snapshot " + path.string());
  try {
    return parse_snapshot(in);
  } catch (const SnapshotError& e) {
    if (e.kind() == SnapshotError::Kind::Empty) {
      throw SnapshotError(SnapshotError::Kind::Empty, path.string() + ": " + e.what());
    }
    throw;
  }
}

void write_snapshot(std::span<const Work> works, std::ostream& out) {
  for (const auto& work : works) {
    nlohmann::ordered_json j;
    j["id"] = work.id.str();
    j["title"] = work.title;
    j["publication_year"] =
        work.publication_year ? nlohmann::ordered_json(*work.publication_year) : nullptr;
    j["doi"] = work.doi ? nlohmann::ordered_json(*work.doi) : nullptr;
    j["authors"] = work.authors;
    j["cited_by_count"] = work.global_citation_count;
    auto refs = nlohmann::ordered_json::array();
    for (const auto& ref : work.referenced_works) refs.push_back(ref.str());
    j["referenced_works"] = std::move(refs);
    j["author_ids"] = work.author_ids;
    out << j.dump() << '\n';
  }
}

}  // namespace oignon
