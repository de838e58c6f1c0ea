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
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "oignon/corpus.hpp"
#include "oignon/graph_builder.hpp"

namespace oignon {

struct LayoutConfig {
  double row_height = 60.0;
  double column_width = 48.0;
  double radius_min = 4.0;
  double radius_max = 24.0;

  /// Throws std::invalid_argument unless lengths are positive and
  /// radius_min < radius_max.
  void validate() const;
};

struct PositionedNode {
  WorkId id;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  /// nullopt for the unknown-year row.
  std::optional<int> year;
};

struct YearTick {
  std::optional<int> year;
  double y = 0.0;
};

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

/// Positions, sizes and ticks of a graph on the year grid. Nodes are stored in
/// (y, x, id) order, edges in (citer, cited) order.
struct LayoutedGraph {
  std::vector<PositionedNode> nodes;
  std::vector<Edge> edges;
  std::vector<YearTick> year_ticks;
  Bounds bounds;
  LayoutConfig config;

  const PositionedNode* find(const WorkId& id) const;
};

/// radius_min + (radius_max - radius_min) * ln(1 + c) / ln(1 + counts_max).
/// Throws std::invalid_argument when counts_max is 0 or below c.
double radius_for(std::uint64_t citation_count, std::uint64_t counts_max, const LayoutConfig& config);

/// Places every node on the year grid.
///
/// Rows: one per distinct year, newest at y = 0, each older year one
/// row_height further down, with empty years between them skipped. Works of
/// unknown year share one extra row below the oldest.
///
/// Columns: within a row nodes are ordered by the source first, then rank
/// (seeds count as infinite, author works as 0) descending, global citations
/// descending, id ascending; the k-th node goes to slot 0, +1, -1, +2, -2, ...
/// times column_width.
///
/// Throws std::invalid_argument for an empty graph.
LayoutedGraph layout_graph(const CitationGraph& graph, const LayoutConfig& config);

enum class StyleToken { Default, Related, Source, Selected };

std::string_view to_string(StyleToken token);
/// Fill colour used for a token in rendered output ("#rrggbb").
std::string_view fill_color(StyleToken token);

/// Highlight tokens. Precedence: selected > source > related > default, where
/// related means cited by or citing the selected node.
///
/// Throws UnknownSelectionError when `selected` is not a node of the graph.
std::map<WorkId, StyleToken> style_roles(const CitationGraph& graph,
                                         const std::optional<WorkId>& selected);

}  // namespace oignon
