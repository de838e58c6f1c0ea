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

#include "oignon/graph_builder.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace oignon {

namespace {

constexpr std::size_t kMinCitersPerSeed = 5;

constexpr std::array<std::pair<NodeRole, std::string_view>, 6> kRoleNames = {{
    {NodeRole::Source, "Source"},
    {NodeRole::RootSeed, "RootSeed"},
    {NodeRole::BranchSeed, "BranchSeed"},
    {NodeRole::Root, "Root"},
    {NodeRole::Branch, "Branch"},
    {NodeRole::AuthorWork, "AuthorWork"},
}};

// Orders ids by global citation count desc, then id asc, and keeps `cap`.
std::vector<WorkId> rank_pool(const std::map<WorkId, std::uint64_t>& counts, std::size_t cap,
                              bool& truncated) {
  std::vector<WorkId> ids;
  ids.reserve(counts.size());
  for (const auto& [id, count] : counts) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&counts](const WorkId& a, const WorkId& b) {
    return counts.at(a) > counts.at(b);
  });
  truncated = ids.size() > cap;
  if (truncated) ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(cap), ids.end());
  return ids;
}

void add_node(std::map<WorkId, GraphNode>& nodes, const Work& work, NodeRole role,
              NodeMetrics metrics = {}) {
  nodes.try_emplace(work.id, GraphNode{work, role, std::move(metrics)});
}

}  // namespace

void GraphConfig::validate() const {
  if (branch_seed_cap < 1) throw std::invalid_argument("branch_seed_cap must be >= 1");
  if (candidate_pool_cap < 1) throw std::invalid_argument("candidate_pool_cap must be >= 1");
  recency.validate();
}

std::string_view to_string(NodeRole role) {
  for (const auto& [r, name] : kRoleNames) {
    if (r == role) return name;
  }
  return "Unknown";
}

NodeRole node_role_from_string(std::string_view name) {
  for (const auto& [role, n] : kRoleNames) {
    if (n == name) return role;
  }
  throw std::invalid_argument("unknown node role: " + std::string(name));
}

CandidatePool collect_root_candidates(std::span<const Work> root_seeds, const WorkId& source,
                                      OpenAlexClient& client, const GraphConfig& config) {
  std::set<WorkId> excluded{source};
  for (const auto& seed : root_seeds) excluded.insert(seed.id);

  std::set<WorkId> frontier;
  for (const auto& seed : root_seeds) {
    for (const auto& ref : seed.referenced_works) {
      if (!excluded.contains(ref)) frontier.insert(ref);
    }
  }
  CandidatePool pool;
  if (frontier.empty()) return pool;

  auto fetched = client.fetch_many(frontier);
  std::map<WorkId, std::uint64_t> counts;
  for (const auto& id : frontier) {
    const auto it = fetched.works.find(id);
    counts.emplace(id, it == fetched.works.end() ? 0 : it->second.global_citation_count);
  }
  pool.ids = rank_pool(counts, config.candidate_pool_cap, pool.truncated);
  for (const auto& id : pool.ids) {
    if (auto it = fetched.works.find(id); it != fetched.works.end()) pool.works.push_back(it->second);
  }
  return pool;
}

CandidatePool collect_branch_candidates(std::span<const Work> branch_seeds, const WorkId& source,
                                        OpenAlexClient& client, const GraphConfig& config) {
  CandidatePool pool;
  if (branch_seeds.empty()) return pool;

  std::set<WorkId> excluded{source};
  for (const auto& seed : branch_seeds) excluded.insert(seed.id);

  const auto per_seed =
      std::max(kMinCitersPerSeed, config.candidate_pool_cap / branch_seeds.size());
  std::map<WorkId, Work> frontier;
  for (const auto& seed : branch_seeds) {
    for (auto& citer : client.fetch_citers(seed.id, per_seed)) {
      if (!excluded.contains(citer.id)) frontier.insert_or_assign(citer.id, std::move(citer));
    }
  }

  std::map<WorkId, std::uint64_t> counts;
  for (const auto& [id, work] : frontier) counts.emplace(id, work.global_citation_count);
  pool.ids = rank_pool(counts, config.candidate_pool_cap, pool.truncated);
  for (const auto& id : pool.ids) pool.works.push_back(frontier.at(id));
  return pool;
}

std::set<Edge> citation_edges(const std::map<WorkId, GraphNode>& nodes) {
  std::set<Edge> edges;
  for (const auto& [id, node] : nodes) {
    for (const auto& ref : node.work.referenced_works) {
      if (ref != id && nodes.contains(ref)) edges.insert(Edge{id, ref});
    }
  }
  return edges;
}

CitationGraph build_graph(std::string_view source_identifier, const GraphConfig& config,
                          OpenAlexClient& client) {
  config.validate();
  const auto stats_before = client.stats();
  CitationGraph graph;
  graph.config = config;

  const Work source = client.resolve_work(source_identifier);
  graph.source = source.id;

  // Backward frontier: every reference of the source, stubs included.
  std::vector<Work> root_seeds;
  std::set<WorkId> unfetched_seeds;
  std::vector<WorkId> root_seed_ids(source.referenced_works.begin(), source.referenced_works.end());
  if (!root_seed_ids.empty()) {
    auto fetched = client.fetch_many(source.referenced_works);
    unfetched_seeds.insert(fetched.missing.begin(), fetched.missing.end());
    for (const auto& id : root_seed_ids) {
      auto it = fetched.works.find(id);
      root_seeds.push_back(it == fetched.works.end() ? Work::stub(id) : std::move(it->second));
    }
  }

  // Forward frontier: the first branch_seed_cap citers in listing order.
  const auto truncated_before = client.stats().truncated_listings;
  std::vector<Work> branch_seeds = client.fetch_citers(source.id, config.branch_seed_cap);
  graph.diagnostics.branch_seeds_truncated = client.stats().truncated_listings > truncated_before;
  std::vector<WorkId> branch_seed_ids;
  for (const auto& seed : branch_seeds) branch_seed_ids.push_back(seed.id);
  std::sort(branch_seed_ids.begin(), branch_seed_ids.end());

  const auto root_pool = collect_root_candidates(root_seeds, source.id, client, config);
  const auto branch_pool = collect_branch_candidates(branch_seeds, source.id, client, config);
  graph.diagnostics.root_pool_truncated = root_pool.truncated;
  graph.diagnostics.branch_pool_truncated = branch_pool.truncated;

  // Later records win inside the index: pools, then seeds, then the source.
  std::vector<Work> corpus(branch_pool.works.begin(), branch_pool.works.end());
  corpus.insert(corpus.end(), root_pool.works.begin(), root_pool.works.end());
  corpus.insert(corpus.end(), branch_seeds.begin(), branch_seeds.end());
  for (const auto& w : root_seeds) {
    if (!unfetched_seeds.contains(w.id)) corpus.push_back(w);
  }
  corpus.push_back(source);
  const auto index = CitationIndex::build(corpus);

  std::vector<RootMetrics> root_ranks;
  root_ranks.reserve(root_pool.ids.size());
  for (const auto& id : root_pool.ids) {
    root_ranks.push_back(rank_root_candidate(id, root_seed_ids, index));
  }
  std::vector<BranchMetrics> branch_ranks;
  branch_ranks.reserve(branch_pool.ids.size());
  for (const auto& id : branch_pool.ids) {
    branch_ranks.push_back(
        rank_branch_candidate(id, branch_seed_ids, source.id, index, config.recency));
  }
  const auto top_roots = select_top_k(root_ranks, config.top_roots_k, index);
  const auto top_branches = select_top_k(branch_ranks, config.top_branches_k, index);

  auto work_or_stub = [&index](const WorkId& id) {
    const Work* w = index.find(id);
    return w ? *w : Work::stub(id);
  };

  add_node(graph.nodes, source, NodeRole::Source);
  for (const auto& seed : root_seeds) add_node(graph.nodes, seed, NodeRole::RootSeed);
  for (const auto& seed : branch_seeds) add_node(graph.nodes, seed, NodeRole::BranchSeed);
  for (const auto& m : top_roots) add_node(graph.nodes, work_or_stub(m.candidate), NodeRole::Root, m);
  for (const auto& m : top_branches) {
    add_node(graph.nodes, work_or_stub(m.candidate), NodeRole::Branch, m);
  }
  graph.edges = citation_edges(graph.nodes);

  for (const auto& [id, node] : graph.nodes) {
    if (index.find(id) == nullptr) graph.diagnostics.missing_ids.push_back(id);
  }
  graph.diagnostics.stats = client.stats() - stats_before;
  graph.diagnostics.messages = client.take_diagnostics();
  return graph;
}

CitationGraph build_author_graph(std::string_view author, const GraphConfig& config,
                                 OpenAlexClient& client) {
  config.validate();
  const auto stats_before = client.stats();
  CitationGraph graph;
  graph.config = config;
  for (const auto& work : client.fetch_author_works(author)) {
    add_node(graph.nodes, work, NodeRole::AuthorWork);
  }
  graph.edges = citation_edges(graph.nodes);
  graph.diagnostics.stats = client.stats() - stats_before;
  graph.diagnostics.messages = client.take_diagnostics();
  return graph;
}

}  // namespace oignon
