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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oignon {

/// Identifier of a single publication, in canonical OpenAlex form ("W123").
///
/// Always non-empty. Ordering is plain lexicographic string ordering; every
/// deterministic tie-break in the library falls back to it.
class WorkId {
 public:
  /// Throws std::invalid_argument on an empty value.
  explicit WorkId(std::string value);

  /// Accepts "W123", "w123" or "https://openalex.org/W123".
  static WorkId canonical(std::string_view raw);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const WorkId&, const WorkId&) = default;
  friend auto operator<=>(const WorkId&, const WorkId&) = default;

 private:
  std::string value_;
};

std::ostream& operator<<(std::ostream& os, const WorkId& id);

struct Work {
  WorkId id;
  std::string title;
  std::optional<int> publication_year;
  std::optional<std::string> doi;
  std::vector<std::string> authors;
  /// Parallel to `authors` when the source provides author identifiers.
  std::vector<std::string> author_ids;
  std::uint64_t global_citation_count = 0;
  std::set<WorkId> referenced_works;

  /// A work known only by id (referenced but never fetched).
  static Work stub(WorkId id);

  friend bool operator==(const Work&, const Work&) = default;
};

/// Bidirectional citation maps over a fixed corpus.
///
/// `backward[a]` holds the references of `a`, `forward[b]` the works citing
/// `b`. Ids that only appear as edge targets are stubs: they have forward
/// entries but no Work record. A built index is immutable.
class CitationIndex {
 public:
  using IdSet = std::set<WorkId>;

  CitationIndex() = default;

  /// Duplicate ids collapse with the last record winning. Self-references are
  /// dropped.
  static CitationIndex build(std::span<const Work> works);

  /// References of `id`; empty for stubs and unknown ids.
  const IdSet& references(const WorkId& id) const;
  /// Works in the corpus citing `id`; empty for unknown ids.
  const IdSet& citers(const WorkId& id) const;

  /// nullptr for stubs and unknown ids.
  const Work* find(const WorkId& id) const;
  bool contains(const WorkId& id) const;
  bool is_stub(const WorkId& id) const;
  /// Global citation count, 0 for stubs and unknown ids.
  std::uint64_t citation_count(const WorkId& id) const;

  const std::map<WorkId, IdSet>& backward() const noexcept { return backward_; }
  const std::map<WorkId, IdSet>& forward() const noexcept { return forward_; }
  const std::map<WorkId, Work>& works() const noexcept { return works_; }
  std::vector<WorkId> stubs() const;

  bool empty() const noexcept { return works_.empty() && forward_.empty(); }

 private:
  std::map<WorkId, IdSet> backward_;
  std::map<WorkId, IdSet> forward_;
  std::map<WorkId, Work> works_;
};

/// Number of works whose bibliography contains both `a` and `b`.
/// Throws std::invalid_argument when a == b.
std::size_t cocitation_pairs(const WorkId& a, const WorkId& b, const CitationIndex& index);

/// Size of the intersection of the reference lists of `a` and `b`.
/// Throws std::invalid_argument when a == b.
std::size_t shared_references(const WorkId& a, const WorkId& b, const CitationIndex& index);

}  // namespace oignon

template <>
struct std::hash<oignon::WorkId> {
  std::size_t operator()(const oignon::WorkId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
