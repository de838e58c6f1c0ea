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


#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oignon/ranking.hpp"
#include "oracles.hpp"
#include "random_corpus.hpp"

namespace oignon {
namespace {

Work make(const std::string& id, std::optional<int> year, std::uint64_t cites,
          std::initializer_list<const char*> refs) {
  Work w = Work::stub(WorkId(id));
  w.publication_year = year;
  w.global_citation_count = cites;
  for (const char* r : refs) w.referenced_works.insert(WorkId(r));
  return w;
}

std::vector<WorkId> ids(std::initializer_list<const char*> names) {
  std::vector<WorkId> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

TEST(RecencyWeightTest, ClosedFormValues) {
  const RecencyParams p;
  EXPECT_NEAR(recency_weight(4.0, p), 1.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(recency_weight(0.3, p), 1.0 + std::log(5.0), 1e-12);
  EXPECT_NEAR(recency_weight(-3.0, p), 1.0 + std::log(5.0), 1e-12);
  EXPECT_LT(recency_weight(1e6, p) - 1.0, 1e-5);
  EXPECT_GT(recency_weight(1e6, p), 1.0);
}

TEST(RecencyWeightTest, StrictlyDecreasingPastClamp) {
  const RecencyParams p;
  for (double t = 1.0; t < 200.0; t += 0.5) EXPECT_GT(recency_weight(t, p), recency_weight(t + 0.5, p));
}

TEST(RecencyParamsTest, RejectsNonPositiveHalfLife) {
  RecencyParams p;
  p.half_life_years = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.half_life_years = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(RootRankTest, TableExample) {
  // X is cited by S1 and S2; co-cited with seeds 4 pair-times; shares 3
  // seed-reference pairs.
  const std::vector<Work> works{
      make("S1", 2000, 0, {"X", "R1", "R2"}), make("S2", 2000, 0, {"X", "R1"}), make("S3", 2000, 0, {"R3"}),
      make("X", 1990, 0, {"R1", "R2"}),       make("C1", 2001, 0, {"X", "S1"}),
  };
  // cocited: C1 cites X and S1 -> 1. cociting: X & S1 share R1, R2 (2), X & S2 share R1 (1).
  const auto index = CitationIndex::build(works);
  const auto m = rank_root_candidate(WorkId("X"), ids({"S1", "S2", "S3"}), index);
  EXPECT_EQ(m.cited_count, 2u);
  EXPECT_EQ(m.cocited_count, 1u);
  EXPECT_EQ(m.cociting_count, 3u);
  EXPECT_EQ(m.total_rank, 6u);
  EXPECT_EQ(m.candidate, WorkId("X"));
}

TEST(RootRankTest, SumsPairTimes) {
  // Two works each citing X alongside two seeds: 4 pair-times.
  const std::vector<Work> works{make("C1", 2001, 0, {"X", "S1", "S2"}), make("C2", 2001, 0, {"X", "S1", "S2"})};
  const auto index = CitationIndex::build(works);
  const auto m = rank_root_candidate(WorkId("X"), ids({"S1", "S2"}), index);
  EXPECT_EQ(m.cocited_count, 4u);
  EXPECT_EQ(m.total_rank, 4u);
}

TEST(RootRankTest, EmptySeedsGiveZero) {
  const std::vector<Work> works{make("A", 2000, 3, {"B"})};
  const auto index = CitationIndex::build(works);
  const auto m = rank_root_candidate(WorkId("B"), {}, index);
  EXPECT_EQ(m, (RootMetrics{WorkId("B"), 0, 0, 0, 0}));
}

TEST(RootRankTest, CandidateMustNotBeSeed) {
  const auto index = CitationIndex::build({});
  EXPECT_THROW(rank_root_candidate(WorkId("S"), ids({"S"}), index), std::invalid_argument);
}

TEST(BranchRankTest, SingleCitedSeed) {
  const std::vector<Work> works{make("SRC", 2010, 0, {"R"}), make("B1", 2012, 0, {"SRC"}),
                                make("X", 2015, 0, {"B1"})};
  const auto index = CitationIndex::build(works);
  RecencyParams p;
  p.reference_year = 2025;
  const auto m = rank_branch_candidate(WorkId("X"), ids({"B1"}), WorkId("SRC"), index, p);
  EXPECT_EQ(m.citing_count, 1u);
  EXPECT_EQ(m.cociting_count, 0u);
  EXPECT_EQ(m.weighted_cocited, 0.0);
  EXPECT_EQ(m.total_rank, 1.0);
}

TEST(BranchRankTest, OneCoCitingWorkHalfLifeAgo) {
  const std::vector<Work> works{make("SRC", 2000, 0, {}), make("X", 2005, 0, {}),
                                make("W", 2021, 0, {"SRC", "X"})};
  const auto index = CitationIndex::build(works);
  RecencyParams p;
  p.reference_year = 2025;
  const auto m = rank_branch_candidate(WorkId("X"), {}, WorkId("SRC"), index, p);
  EXPECT_NEAR(m.weighted_cocited, 1.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(m.total_rank, 1.0 + std::log(2.0), 1e-12);
}

TEST(BranchRankTest, UnknownYearAndStubCitersWeighOne) {
  const std::vector<Work> works{make("SRC", 2000, 0, {"R1", "R2"}), make("X", 2005, 0, {"R1"}),
                                make("W", std::nullopt, 0, {"SRC", "X"})};
  const auto index = CitationIndex::build(works);
  RecencyParams p;
  p.reference_year = 2025;
  const auto m = rank_branch_candidate(WorkId("X"), ids({"B"}), WorkId("SRC"), index, p);
  EXPECT_EQ(m.citing_count, 0u);
  EXPECT_EQ(m.cociting_count, 1u);
  EXPECT_EQ(m.weighted_cocited, 1.0);
  EXPECT_EQ(m.total_rank, 2.0);
}

TEST(BranchRankTest, CandidateMustNotBeSource) {
  const auto index = CitationIndex::build({});
  EXPECT_THROW(rank_branch_candidate(WorkId("S"), {}, WorkId("S"), index, RecencyParams{}),
               std::invalid_argument);
}

TEST(RankingOracleTest, RandomCorporaMatchTripleLoop) {
  std::mt19937 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const auto works = testing::random_corpus(rng, {.min_works = 10, .max_works = 40});
    const auto index = CitationIndex::build(works);
    const auto map = testing::to_map(works);
    std::vector<WorkId> all;
    for (const auto& [id, w] : map) all.push_back(id);
    std::shuffle(all.begin(), all.end(), rng);
    const WorkId source = all[0];
    const std::vector<WorkId> seeds(all.begin() + 1, all.begin() + 1 + static_cast<std::ptrdiff_t>(all.size() / 4));
    RecencyParams p;
    p.reference_year = 2020;
    for (std::size_t i = 1 + seeds.size(); i < all.size(); ++i) {
      const auto& cand = all[i];
      const auto root = rank_root_candidate(cand, seeds, index);
      const auto ro = testing::oracle_root(cand, seeds, map);
      ASSERT_EQ(root.cited_count, ro.cited);
      ASSERT_EQ(root.cocited_count, ro.cocited);
      ASSERT_EQ(root.cociting_count, ro.cociting);
      ASSERT_EQ(root.total_rank, ro.total);
      const auto branch = rank_branch_candidate(cand, seeds, source, index, p);
      const auto bo = testing::oracle_branch(cand, seeds, source, map, p.half_life_years, p.reference_year);
      ASSERT_EQ(branch.citing_count, bo.citing);
      ASSERT_EQ(branch.cociting_count, bo.cociting);
      ASSERT_NEAR(branch.weighted_cocited, bo.weighted, 1e-9);
      ASSERT_NEAR(branch.total_rank, bo.total, 1e-9);
    }
  }
}

TEST(SelectTopKTest, ZeroKIsEmpty) {
  const auto index = CitationIndex::build({});
  const std::vector<RootMetrics> m{{WorkId("A"), 1, 0, 0, 1}};
  EXPECT_TRUE(select_top_k(m, 0, index).empty());
}

TEST(SelectTopKTest, TieBreakByCitationsThenId) {
  const std::vector<Work> works{make("A", 2000, 10, {}), make("B", 2000, 20, {}), make("C", 2000, 99, {}),
                                make("D", 2000, 20, {})};
  const auto index = CitationIndex::build(works);
  const std::vector<RootMetrics> m{{WorkId("A"), 5, 0, 0, 5},
                                   {WorkId("C"), 2, 0, 0, 2},
                                   {WorkId("B"), 5, 0, 0, 5},
                                   {WorkId("D"), 5, 0, 0, 5}};
  const auto top = select_top_k(m, 10, index);
  ASSERT_EQ(top.size(), 4u);
  EXPECT_EQ(top[0].candidate, WorkId("B"));
  EXPECT_EQ(top[1].candidate, WorkId("D"));
  EXPECT_EQ(top[2].candidate, WorkId("A"));
  EXPECT_EQ(top[3].candidate, WorkId("C"));
}

TEST(SelectTopKTest, ZeroRankExcludedEvenWhenUnfilled) {
  const auto index = CitationIndex::build({});
  const std::vector<BranchMetrics> m{{WorkId("A"), 0, 0, 0.0, 0.0}, {WorkId("B"), 1, 0, 0.0, 1.0}};
  const auto top = select_top_k(m, 5, index);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].candidate, WorkId("B"));
}

TEST(SelectTopKTest, MatchesSortOracle) {
  std::mt19937 rng(99);
  for (int round = 0; round < 50; ++round) {
    const auto works = testing::random_corpus(rng, {.min_works = 5, .max_works = 30});
    const auto index = CitationIndex::build(works);
    std::vector<BranchMetrics> metrics;
    std::vector<testing::Ranked> ranked;
    for (const auto& w : works) {
      const double rank = static_cast<double>(testing::uniform(rng, 0, 4)) * 0.5;
      metrics.push_back(BranchMetrics{w.id, 0, 0, rank, rank});
      ranked.push_back(testing::Ranked{w.id, rank, w.global_citation_count});
    }
    const auto k = static_cast<std::size_t>(testing::uniform(rng, 0, 12));
    const auto top = select_top_k(metrics, k, index);
    const auto expected = testing::oracle_top_k(ranked, k);
    ASSERT_EQ(top.size(), expected.size());
    for (std::size_t i = 0; i < top.size(); ++i) EXPECT_EQ(top[i].candidate, expected[i]);
  }
}

}  // namespace
}  // namespace oignon
