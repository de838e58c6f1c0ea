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

#include "oignon/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "oignon/errors.hpp"

namespace oignon {

namespace {

double node_rank(const GraphNode& node) {
  switch (node.role) {
    case NodeRole::Source:
    case NodeRole::RootSeed:
    case NodeRole::BranchSeed:
      return std::numeric_limits<double>::infinity();
    case NodeRole::Root:
      if (const auto* m = std::get_if<RootMetrics>(&node.metrics)) {
        return static_cast<double>(m->total_rank);
      }
      return 0.0;
    case NodeRole::Branch:
      if (const auto* m = std::get_if<BranchMetrics>(&node.metrics)) return m->total_rank;
      return 0.0;
    case NodeRole::AuthorWork:
      return 0.0;
  }
  return 0.0;
}

// Slot sequence 0, +1, -1, +2, -2, ...
double slot_offset(std::size_t k) {
  if (k == 0) return 0.0;
  const auto step = static_cast<double>((k + 1) / 2);
  return k % 2 == 1 ? step : -step;
}

}  // namespace

void LayoutConfig::validate() const {
  if (!(row_height > 0.0) || !(column_width > 0.0)) {
    throw std::invalid_argument("row_height and column_width must be positive");
  }
  if (!(radius_min > 0.0) || !(radius_min < radius_max)) {
    throw std::invalid_argument("radii must satisfy 0 < radius_min < radius_max");
  }
}

const PositionedNode* LayoutedGraph::find(const WorkId& id) const {
  for (const auto& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

double radius_for(std::uint64_t citation_count, std::uint64_t counts_max, const LayoutConfig& config) {
  if (counts_max == 0) throw std::invalid_argument("counts_max must be >= 1");
  if (citation_count > counts_max) throw std::invalid_argument("citation count exceeds counts_max");
  if (citation_count == counts_max) return config.radius_max;
  const double scale = std::log1p(static_cast<double>(citation_count)) /
                       std::log1p(static_cast<double>(counts_max));
  return config.radius_min + (config.radius_max - config.radius_min) * scale;
}

LayoutedGraph layout_graph(const CitationGraph& graph, const LayoutConfig& config) {
  config.validate();
  if (graph.nodes.empty()) throw std::invalid_argument("cannot lay out an empty graph");

  LayoutedGraph out;
  out.config = config;

  std::uint64_t counts_max = 1;
  std::set<int, std::greater<>> years;
  bool has_unknown = false;
  for (const auto& [id, node] : graph.nodes) {
    counts_max = std::max(counts_max, node.work.global_citation_count);
    if (node.work.publication_year) {
      years.insert(*node.work.publication_year);
    } else {
      has_unknown = true;
    }
  }

  std::map<int, double> row_y;
  double y = 0.0;
  for (int year : years) {
    row_y.emplace(year, y);
    out.year_ticks.push_back(YearTick{year, y});
    y += config.row_height;
  }
  const double unknown_y = y;
  if (has_unknown) out.year_ticks.push_back(YearTick{std::nullopt, unknown_y});

  // Group nodes per row, then order each row.
  std::map<double, std::vector<const GraphNode*>> rows;
  for (const auto& [id, node] : graph.nodes) {
    const double row = node.work.publication_year ? row_y.at(*node.work.publication_year) : unknown_y;
    rows[row].push_back(&node);
  }
  for (auto& [row, members] : rows) {
    std::sort(members.begin(), members.end(), [](const GraphNode* a, const GraphNode* b) {
      const bool sa = a->role == NodeRole::Source;
      const bool sb = b->role == NodeRole::Source;
      if (sa != sb) return sa;
      const double ra = node_rank(*a);
      const double rb = node_rank(*b);
      if (ra != rb) return ra > rb;
      if (a->work.global_citation_count != b->work.global_citation_count) {
        return a->work.global_citation_count > b->work.global_citation_count;
      }
      return a->work.id < b->work.id;
    });
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto& work = members[k]->work;
      out.nodes.push_back(PositionedNode{
          work.id, slot_offset(k) * config.column_width, row,
          radius_for(work.global_citation_count, counts_max, config), work.publication_year});
    }
  }
  std::sort(out.nodes.begin(), out.nodes.end(), [](const PositionedNode& a, const PositionedNode& b) {
    return std::tie(a.y, a.x, a.id) < std::tie(b.y, b.x, b.id);
  });

  out.edges.assign(graph.edges.begin(), graph.edges.end());

  out.bounds = Bounds{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                      std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& node : out.nodes) {
    out.bounds.min_x = std::min(out.bounds.min_x, node.x - node.radius);
    out.bounds.min_y = std::min(out.bounds.min_y, node.y - node.radius);
    out.bounds.max_x = std::max(out.bounds.max_x, node.x + node.radius);
    out.bounds.max_y = std::max(out.bounds.max_y, node.y + node.radius);
  }
  return out;
}

std::string_view to_string(StyleToken token) {
  switch (token) {
    case StyleToken::Source:
      return "source-grey";
    case StyleToken::Selected:
      return "selected-yellow";
    case StyleToken::Related:
      return "related-green";
    case StyleToken::Default:
      return "default";
  }
  return "default";
}

std::string_view fill_color(StyleToken token) {
  switch (token) {
    case StyleToken::Source:
      return "#4a4a4a";
    case StyleToken::Selected:
      return "#f5e6a3";
    case StyleToken::Related:
      return "#7bc47f";
    case StyleToken::Default:
      return "#cfd8dc";
  }
  return "#cfd8dc";
}

std::map<WorkId, StyleToken> style_roles(const CitationGraph& graph,
                                         const std::optional<WorkId>& selected) {
  if (selected && !graph.nodes.contains(*selected)) {
    throw UnknownSelectionError("selected work is not in the graph: " + selected->str());
  }
  std::map<WorkId, StyleToken> styles;
  for (const auto& [id, node] : graph.nodes) styles.emplace(id, StyleToken::Default);
  if (selected) {
    for (const auto& edge : graph.edges) {
      if (edge.citer == *selected) styles.at(edge.cited) = StyleToken::Related;
      if (edge.cited == *selected) styles.at(edge.citer) = StyleToken::Related;
    }
  }
  if (graph.source) styles.at(*graph.source) = StyleToken::Source;
  if (selected) styles.at(*selected) = StyleToken::Selected;
  return styles;
}

}  // namespace oignon
