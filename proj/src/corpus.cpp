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

#include "oignon/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace oignon {

namespace {

constexpr std::string_view kOpenAlexPrefixes[] = {
    "https://openalex.org/",
    "http://openalex.org/",
};

const CitationIndex::IdSet& empty_set() {
  static const CitationIndex::IdSet kEmpty;
  return kEmpty;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Walks two sorted sets in lockstep; both arguments come from std::set.
std::size_t intersection_size(const CitationIndex::IdSet& a, const CitationIndex::IdSet& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

WorkId::WorkId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw std::invalid_argument("WorkId must not be empty");
}

WorkId WorkId::canonical(std::string_view raw) {
  raw = trim(raw);
  for (auto prefix : kOpenAlexPrefixes) {
    if (raw.starts_with(prefix)) {
      raw.remove_prefix(prefix.size());
      break;
    }
  }
  std::string value(raw);
  if (!value.empty() && value.front() == 'w') value.front() = 'W';
  return WorkId(std::move(value));
}

std::ostream& operator<<(std::ostream& os, const WorkId& id) { return os << id.str(); }

Work Work::stub(WorkId id) {
  return Work{std::move(id), {}, std::nullopt, std::nullopt, {}, {}, 0, {}};
}

CitationIndex CitationIndex::build(std::span<const Work> works) {
  CitationIndex index;
  for (const auto& work : works) {
    index.works_.insert_or_assign(work.id, work);
  }
  for (auto& [id, work] : index.works_) {
    work.referenced_works.erase(id);
    index.backward_.emplace(id, work.referenced_works);
    for (const auto& cited : work.referenced_works) {
      index.forward_[cited].insert(id);
    }
  }
  return index;
}

const CitationIndex::IdSet& CitationIndex::references(const WorkId& id) const {
  auto it = backward_.find(id);
  return it == backward_.end() ? empty_set() : it->second;
}

const CitationIndex::IdSet& CitationIndex::citers(const WorkId& id) const {
  auto it = forward_.find(id);
  return it == forward_.end() ? empty_set() : it->second;
}

const Work* CitationIndex::find(const WorkId& id) const {
  auto it = works_.find(id);
  return it == works_.end() ? nullptr : &it->second;
}

bool CitationIndex::contains(const WorkId& id) const {
  return works_.contains(id) || forward_.contains(id);
}

bool CitationIndex::is_stub(const WorkId& id) const {
  return !works_.contains(id) && forward_.contains(id);
}

std::uint64_t CitationIndex::citation_count(const WorkId& id) const {
  const Work* work = find(id);
  return work ? work->global_citation_count : 0;
}

std::vector<WorkId> CitationIndex::stubs() const {
  std::vector<WorkId> out;
  for (const auto& [id, citers] : forward_) {
    if (!works_.contains(id)) out.push_back(id);
  }
  return out;
}

std::size_t cocitation_pairs(const WorkId& a, const WorkId& b, const CitationIndex& index) {
  if (a == b) throw std::invalid_argument("cocitation_pairs requires distinct works");
  return intersection_size(index.citers(a), index.citers(b));
}

std::size_t shared_references(const WorkId& a, const WorkId& b, const CitationIndex& index) {
  if (a == b) throw std::invalid_argument("shared_references requires distinct works");
  return intersection_size(index.references(a), index.references(b));
}

}  // namespace oignon
