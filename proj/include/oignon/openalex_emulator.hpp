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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "oignon/corpus.hpp"
#include "oignon/http.hpp"

namespace oignon {

/// Answers the subset of the OpenAlex REST API the client uses, from an
/// in-memory corpus that is treated as the whole world:
///
///   GET /works/{W..}            GET /works/doi:{doi}
///   GET /works?filter=cites:{W..}
///   GET /works?filter=openalex_id:{W..}|{W..}|...
///   GET /works?filter=author.id:{A..}
///   GET /authors?search={name}
///
/// Listings honour per-page (max 200) and cursor paging ("*" starts; the
/// next cursor is the decimal offset) and are ordered by id ascending.
/// Author search is a case-insensitive substring match on display names.
///
/// Backs offline snapshot mode, and doubles as the fake server in tests.
class OpenAlexEmulator final : public Transport {
 public:
  explicit OpenAlexEmulator(std::vector<Work> works);

  HttpResponse get(const std::string& url) override;

  const CitationIndex& index() const noexcept { return index_; }

 private:
  struct Author {
    std::string display_name;
    std::set<WorkId> works;
  };

  HttpResponse single_work(const std::string& key) const;
  HttpResponse list_works(const url::QueryParams& query) const;
  HttpResponse search_authors(const url::QueryParams& query) const;

  CitationIndex index_;
  std::map<std::string, WorkId> by_doi_;
  std::map<std::string, Author> authors_;
};

}  // namespace oignon
