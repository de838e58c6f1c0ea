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

#include "oignon/ranking.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace oignon {

namespace {

template <typename Metrics>
std::vector<Metrics> top_k(std::span<const Metrics> metrics, std::size_t k,
                           const CitationIndex& index) {
  std::vector<Metrics> ranked;
  ranked.reserve(metrics.size());
  for (const auto& m : metrics) {
    if (m.total_rank > 0) ranked.push_back(m);
  }
  auto before = [&index](const Metrics& a, const Metrics& b) {
    if (a.total_rank != b.total_rank) return a.total_rank > b.total_rank;
    const auto ca = index.citation_count(a.candidate);
    const auto cb = index.citation_count(b.candidate);
    if (ca != cb) return ca > cb;
    return a.candidate < b.candidate;
  };
  const auto keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), before);
  ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
  return ranked;
}

}  // namespace

int current_year() {
  using namespace std::chrono;
  const year_month_day today{floor<days>(system_clock::now())};
  return static_cast<int>(today.year());
}

void RecencyParams::validate() const {
  if (!(half_life_years > 0.0)) {
    throw std::invalid_argument("recency half-life must be positive");
  }
}

double recency_weight(double years_since_publication, const RecencyParams& params) {
  const double t = std::max(years_since_publication, 1.0);
  return 1.0 + std::log1p(params.half_life_years / t);
}

RootMetrics rank_root_candidate(const WorkId& candidate, std::span<const WorkId> root_seeds,
                                const CitationIndex& index) {
  RootMetrics m{.candidate = candidate};
  for (const auto& seed : root_seeds) {
    if (seed == candidate) throw std::invalid_argument("root candidate is a seed: " + seed.str());
    if (index.references(seed).contains(candidate)) ++m.cited_count;
    m.cocited_count += cocitation_pairs(candidate, seed, index);
    m.cociting_count += shared_references(candidate, seed, index);
  }
  m.total_rank = m.cocited_count + m.cociting_count + m.cited_count;
  return m;
}

BranchMetrics rank_branch_candidate(const WorkId& candidate, std::span<const WorkId> branch_seeds,
                                    const WorkId& source, const CitationIndex& index,
                                    const RecencyParams& params) {
  if (candidate == source) throw std::invalid_argument("branch candidate is the source");
  BranchMetrics m{.candidate = candidate};

  const auto& refs = index.references(candidate);
  for (const auto& seed : branch_seeds) {
    if (refs.contains(seed)) ++m.citing_count;
  }
  m.cociting_count = shared_references(candidate, source, index);

  const auto& source_citers = index.citers(source);
  for (const auto& citer : index.citers(candidate)) {
    if (!source_citers.contains(citer)) continue;
    const Work* work = index.find(citer);
    if (work && work->publication_year) {
      const int age = params.reference_year - *work->publication_year;
      m.weighted_cocited += recency_weight(static_cast<double>(age), params);
    } else {
      m.weighted_cocited += 1.0;
    }
  }

  m.total_rank = static_cast<double>(m.citing_count) + static_cast<double>(m.cociting_count) +
                 m.weighted_cocited;
  return m;
}

std::vector<RootMetrics> select_top_k(std::span<const RootMetrics> metrics, std::size_t k,
                                      const CitationIndex& index) {
  return top_k(metrics, k, index);
}

std::vector<BranchMetrics> select_top_k(std::span<const BranchMetrics> metrics, std::size_t k,
                                        const CitationIndex& index) {
  return top_k(metrics, k, index);
}

}  // namespace oignon
