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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oignon::testing {

namespace {

bool cites(const WorkMap& corpus, const WorkId& citer, const WorkId& cited) {
  if (citer == cited) return false;
  const auto it = corpus.find(citer);
  return it != corpus.end() && it->second.referenced_works.count(cited) > 0;
}

std::vector<WorkId> refs_of(const WorkMap& corpus, const WorkId& id) {
  std::vector<WorkId> out;
  if (const auto it = corpus.find(id); it != corpus.end()) {
    for (const auto& r : it->second.referenced_works) {
      if (r != id) out.push_back(r);
    }
  }
  return out;
}

std::uint64_t shared_refs(const WorkMap& corpus, const WorkId& a, const WorkId& b) {
  std::uint64_t n = 0;
  for (const auto& r : refs_of(corpus, a)) {
    if (cites(corpus, b, r)) ++n;
  }
  return n;
}

std::uint64_t citations_of(const WorkMap& corpus, const WorkId& id) {
  const auto it = corpus.find(id);
  return it == corpus.end() ? 0 : it->second.global_citation_count;
}

// Works citing `id`, in listing order (citations desc, id asc).
std::vector<WorkId> citers_in_listing_order(const WorkMap& world, const WorkId& id) {
  std::vector<WorkId> out;
  for (const auto& [wid, w] : world) {
    if (cites(world, wid, id)) out.push_back(wid);
  }
  std::sort(out.begin(), out.end(), [&world](const WorkId& a, const WorkId& b) {
    const auto ca = citations_of(world, a);
    const auto cb = citations_of(world, b);
    return ca != cb ? ca > cb : a < b;
  });
  return out;
}

std::vector<WorkId> truncate_pool(const WorkMap& world, const std::set<WorkId>& pool, std::size_t cap) {
  std::vector<WorkId> ids(pool.begin(), pool.end());
  std::sort(ids.begin(), ids.end(), [&world](const WorkId& a, const WorkId& b) {
    const auto ca = citations_of(world, a);
    const auto cb = citations_of(world, b);
    return ca != cb ? ca > cb : a < b;
  });
  if (ids.size() > cap) ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(cap), ids.end());
  return ids;
}

}  // namespace

WorkMap to_map(const std::vector<Work>& works) {
  WorkMap out;
  for (const auto& w : works) out.insert_or_assign(w.id, w);
  return out;
}

double oracle_weight(double t, double h) {
  const double clamped = t < 1.0 ? 1.0 : t;
  return 1.0 + std::log(1.0 + h / clamped);
}

RootOracle oracle_root(const WorkId& candidate, const std::vector<WorkId>& seeds, const WorkMap& corpus) {
  RootOracle o;
  for (const auto& seed : seeds) {
    if (cites(corpus, seed, candidate)) ++o.cited;
    for (const auto& [third, w] : corpus) {
      if (cites(corpus, third, candidate) && cites(corpus, third, seed)) ++o.cocited;
    }
    o.cociting += shared_refs(corpus, candidate, seed);
  }
  o.total = o.cited + o.cocited + o.cociting;
  return o;
}

BranchOracle oracle_branch(const WorkId& candidate, const std::vector<WorkId>& seeds, const WorkId& source,
                           const WorkMap& corpus, double h, int reference_year) {
  BranchOracle o;
  for (const auto& seed : seeds) {
    if (cites(corpus, candidate, seed)) ++o.citing;
  }
  o.cociting = shared_refs(corpus, candidate, source);
  for (const auto& [third, w] : corpus) {
    if (!cites(corpus, third, candidate) || !cites(corpus, third, source)) continue;
    o.weighted += w.publication_year ? oracle_weight(reference_year - *w.publication_year, h) : 1.0;
  }
  o.total = static_cast<double>(o.citing) + static_cast<double>(o.cociting) + o.weighted;
  return o;
}

std::vector<WorkId> oracle_top_k(std::vector<Ranked> ranked, std::size_t k) {
  std::erase_if(ranked, [](const Ranked& r) { return r.rank == 0.0; });
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.rank != b.rank) return a.rank > b.rank;
    if (a.citations != b.citations) return a.citations > b.citations;
    return a.id < b.id;
  });
  std::vector<WorkId> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].id);
  return out;
}

std::set<WorkId> oracle_node_set(const std::vector<Work>& world_list, const WorkId& source,
                                 const GraphConfig& config) {
  const auto world = to_map(world_list);
  std::set<WorkId> nodes{source};

  const auto root_seeds = refs_of(world, source);
  nodes.insert(root_seeds.begin(), root_seeds.end());

  auto citers = citers_in_listing_order(world, source);
  if (citers.size() > config.branch_seed_cap) citers.erase(citers.begin() + static_cast<std::ptrdiff_t>(config.branch_seed_cap), citers.end());
  const std::vector<WorkId> branch_seeds = citers;
  nodes.insert(branch_seeds.begin(), branch_seeds.end());

  std::set<WorkId> root_frontier;
  for (const auto& seed : root_seeds) {
    for (const auto& r : refs_of(world, seed)) {
      if (r != source && std::find(root_seeds.begin(), root_seeds.end(), r) == root_seeds.end()) {
        root_frontier.insert(r);
      }
    }
  }
  const auto root_pool = truncate_pool(world, root_frontier, config.candidate_pool_cap);

  std::set<WorkId> branch_frontier;
  if (!branch_seeds.empty()) {
    const std::size_t per_seed = std::max<std::size_t>(5, config.candidate_pool_cap / branch_seeds.size());
    for (const auto& seed : branch_seeds) {
      auto level2 = citers_in_listing_order(world, seed);
      if (level2.size() > per_seed) level2.erase(level2.begin() + static_cast<std::ptrdiff_t>(per_seed), level2.end());
      for (const auto& c : level2) {
        if (c != source && std::find(branch_seeds.begin(), branch_seeds.end(), c) == branch_seeds.end()) {
          branch_frontier.insert(c);
        }
      }
    }
  }
  const auto branch_pool = truncate_pool(world, branch_frontier, config.candidate_pool_cap);

  // Ranking sees only what the builder fetched.
  WorkMap local;
  auto take = [&](const WorkId& id) {
    if (const auto it = world.find(id); it != world.end()) local.insert_or_assign(id, it->second);
  };
  take(source);
  for (const auto& id : root_seeds) take(id);
  for (const auto& id : branch_seeds) take(id);
  for (const auto& id : root_pool) take(id);
  for (const auto& id : branch_pool) take(id);

  std::vector<Ranked> roots;
  for (const auto& id : root_pool) {
    roots.push_back(Ranked{id, static_cast<double>(oracle_root(id, root_seeds, local).total),
                           citations_of(local, id)});
  }
  std::vector<Ranked> branches;
  for (const auto& id : branch_pool) {
    branches.push_back(Ranked{id,
                              oracle_branch(id, branch_seeds, source, local, config.recency.half_life_years,
                                            config.recency.reference_year)
                                  .total,
                              citations_of(local, id)});
  }
  for (const auto& id : oracle_top_k(roots, config.top_roots_k)) nodes.insert(id);
  for (const auto& id : oracle_top_k(branches, config.top_branches_k)) nodes.insert(id);
  return nodes;
}

}  // namespace oignon::testing
