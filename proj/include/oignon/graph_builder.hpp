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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "oignon/corpus.hpp"
#include "oignon/openalex_client.hpp"
#include "oignon/ranking.hpp"

namespace oignon {

struct GraphConfig {
  std::size_t top_roots_k = 20;
  std::size_t top_branches_k = 20;
  std::size_t branch_seed_cap = 100;
  /// Per direction.
  std::size_t candidate_pool_cap = 2000;
  RecencyParams recency;

  void validate() const;
};

/// Lower enumerator value wins when a work qualifies for several roles.
enum class NodeRole { Source, RootSeed, BranchSeed, Root, Branch, AuthorWork };

std::string_view to_string(NodeRole role);
/// Throws std::invalid_argument for unknown names.
NodeRole node_role_from_string(std::string_view name);

using NodeMetrics = std::variant<std::monostate, RootMetrics, BranchMetrics>;

struct GraphNode {
  Work work;
  NodeRole role;
  /// Set for Root and Branch nodes only.
  NodeMetrics metrics;
};

struct Edge {
  WorkId citer;
  WorkId cited;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct BuildDiagnostics {
  FetchStats stats;
  bool branch_seeds_truncated = false;
  bool root_pool_truncated = false;
  bool branch_pool_truncated = false;
  /// Ids referenced by selected nodes whose metadata could not be fetched.
  std::vector<WorkId> missing_ids;
  std::vector<std::string> messages;
};

struct CitationGraph {
  /// Absent for author graphs.
  std::optional<WorkId> source;
  std::map<WorkId, GraphNode> nodes;
  std::set<Edge> edges;
  GraphConfig config;
  BuildDiagnostics diagnostics;
};

/// Depth-2 backward pool: references of the seeds, minus the seeds and the
/// source, truncated to `pool_cap` by global citations desc then id asc.
struct CandidatePool {
  std::vector<WorkId> ids;
  /// Metadata of pool members that could be fetched.
  std::vector<Work> works;
  bool truncated = false;
};

CandidatePool collect_root_candidates(std::span<const Work> root_seeds, const WorkId& source,
                                      OpenAlexClient& client, const GraphConfig& config);

/// Depth-2 forward pool: citers of each seed (per-seed cap
/// max(5, pool_cap / |seeds|)), minus the seeds and the source, truncated to
/// `pool_cap`.
CandidatePool collect_branch_candidates(std::span<const Work> branch_seeds, const WorkId& source,
                                        OpenAlexClient& client, const GraphConfig& config);

/// Selects the source, all of its references, its first `branch_seed_cap`
/// citers, and the top-ranked roots and branches; then links every selected
/// pair with a citation edge. Ranking runs over the local corpus made of the
/// source, both seed sets and both candidate pools.
///
/// Throws NotFoundError when the source cannot be resolved.
CitationGraph build_graph(std::string_view source_identifier, const GraphConfig& config,
                          OpenAlexClient& client);

/// Every work of the author, linked by the citations among them. No ranking.
CitationGraph build_author_graph(std::string_view author, const GraphConfig& config,
                                 OpenAlexClient& client);

/// Edges (a, b) for every pair of nodes where b is in a's reference list.
std::set<Edge> citation_edges(const std::map<WorkId, GraphNode>& nodes);

}  // namespace oignon
