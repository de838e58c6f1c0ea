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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "oignon/corpus.hpp"

// Identifier normalization and the mapping between OpenAlex work records
// and Work.

namespace oignon::openalex {

/// Fields requested from the works endpoint.
inline constexpr std::string_view kWorkSelect =
    "id,display_name,publication_year,doi,authorships,cited_by_count,referenced_works";

/// Lowercases and strips "https://doi.org/", "http://dx.doi.org/", "doi:" and
/// similar prefixes. Idempotent.
std::string normalize_doi(std::string_view doi);

struct WorkLookup {
  enum class Kind { Id, Doi };
  Kind kind;
  /// Canonical WorkId string or normalized DOI.
  std::string key;

  friend bool operator==(const WorkLookup&, const WorkLookup&) = default;
};

/// Classifies a user-supplied work identifier (WorkId, OpenAlex URL, DOI or
/// DOI URL). Throws std::invalid_argument for anything else.
WorkLookup parse_work_identifier(std::string_view identifier);

/// "A123" for "A123", "a123" or "https://openalex.org/A123"; nullopt when the
/// input does not look like an author id.
std::optional<std::string> parse_author_id(std::string_view query);

/// Throws std::invalid_argument when the record has no usable id.
Work work_from_json(const nlohmann::json& record);
nlohmann::ordered_json work_to_json(const Work& work);

}  // namespace oignon::openalex
