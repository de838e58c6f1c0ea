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

#include <cstdint>
#include <span>
#include <vector>

#include "oignon/corpus.hpp"

namespace oignon {

/// Calendar year of the system clock (UTC).
int current_year();

struct RecencyParams {
  double half_life_years = 4.0;
  int reference_year = current_year();

  /// Throws std::invalid_argument unless half_life_years > 0.
  void validate() const;
};

/// Backward candidate score. All terms are seed-wise sums.
struct RootMetrics {
  WorkId candidate;
  /// Σ over seeds of works citing both the candidate and the seed.
  std::uint64_t cocited_count = 0;
  /// Σ over seeds of references shared with the seed.
  std::uint64_t cociting_count = 0;
  /// Seeds that cite the candidate.
  std::uint64_t cited_count = 0;
  std::uint64_t total_rank = 0;

  friend bool operator==(const RootMetrics&, const RootMetrics&) = default;
};

/// Forward candidate score.
struct BranchMetrics {
  WorkId candidate;
  /// Seeds cited by the candidate.
  std::uint64_t citing_count = 0;
  /// References shared with the source.
  std::uint64_t cociting_count = 0;
  /// Recency-weighted count of works citing both the candidate and the source.
  double weighted_cocited = 0.0;
  double total_rank = 0.0;

  friend bool operator==(const BranchMetrics&, const BranchMetrics&) = default;
};

/// w(t) = 1 + ln(1 + h / max(t, 1)).
double recency_weight(double years_since_publication, const RecencyParams& params);

/// Throws std::invalid_argument when the candidate is itself a seed.
RootMetrics rank_root_candidate(const WorkId& candidate, std::span<const WorkId> root_seeds,
                                const CitationIndex& index);

/// Co-citing works of unknown year (including stubs) contribute weight 1.
/// Throws std::invalid_argument when candidate == source.
BranchMetrics rank_branch_candidate(const WorkId& candidate, std::span<const WorkId> branch_seeds,
                                    const WorkId& source, const CitationIndex& index,
                                    const RecencyParams& params);

/// Top `k` candidates by total_rank desc, global citations desc, id asc.
/// Candidates with a zero rank are never returned.
std::vector<RootMetrics> select_top_k(std::span<const RootMetrics> metrics, std::size_t k,
                                      const CitationIndex& index);
std::vector<BranchMetrics> select_top_k(std::span<const BranchMetrics> metrics, std::size_t k,
                                        const CitationIndex& index);

}  // namespace oignon
