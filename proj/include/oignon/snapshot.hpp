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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oignon/corpus.hpp"

// Line-delimited JSON corpus files. Each line is one object with the fields
//   id, title, publication_year, doi, authors, cited_by_count,
//   referenced_works, author_ids
// Unknown fields are ignored; blank lines are skipped.

namespace oignon {

struct SnapshotLoad {
  std::vector<Work> works;
  /// One entry per malformed line, "line N: reason".
  std::vector<std::string> warnings;
};

/// Throws SnapshotError (Kind::Io) when the file cannot be read and
/// SnapshotError (Kind::Empty) when it holds no valid record.
SnapshotLoad load_snapshot(const std::filesystem::path& path);
SnapshotLoad parse_snapshot(std::istream& in);

void write_snapshot(std::span<const Work> works, std::ostream& out);

}  // namespace oignon
