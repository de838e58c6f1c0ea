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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oignon/graph_builder.hpp"
#include "oignon/layout.hpp"

namespace oignon {

inline constexpr int kSchemaVersion = 1;

struct DocumentNode {
  WorkId id;
  std::string title;
  std::optional<int> year;
  std::optional<std::string> doi;
  std::vector<std::string> authors;
  std::uint64_t citations = 0;
  NodeRole role = NodeRole::Source;
  NodeMetrics metrics;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
};

/// The contract between the core pipeline and every consumer (exporters,
/// the HTTP server, the browser viewer).
struct GraphDocument {
  int schema_version = kSchemaVersion;
  std::optional<WorkId> source;
  /// ISO 8601 timestamp; the only field allowed to differ between two builds
  /// of the same inputs.
  std::string built_at;
  GraphConfig graph_config;
  LayoutConfig layout_config;
  /// (y, x, id) order.
  std::vector<DocumentNode> nodes;
  /// (from, to) order.
  std::vector<Edge> edges;
  std::vector<YearTick> year_ticks;
  BuildDiagnostics diagnostics;

  const DocumentNode* find(const WorkId& id) const;
};

/// Throws InconsistentInputsError when the layout and the graph hold
/// different node sets.
GraphDocument make_document(const LayoutedGraph& layouted, const CitationGraph& graph,
                            std::string built_at);

/// Canonical text: fixed key order with schema_version first, two-space
/// indentation, reals with exactly six decimals, trailing newline.
std::string serialize_document(const GraphDocument& document);

/// Throws std::invalid_argument on malformed input or an unsupported schema
/// version.
GraphDocument parse_document(std::string_view text);

/// serialize_document(make_document(...)).
std::string export_document(const LayoutedGraph& layouted, const CitationGraph& graph,
                            std::string built_at);

nlohmann::ordered_json to_json(const DocumentNode& node);
nlohmann::ordered_json to_json(const GraphDocument& document);

/// Writes JSON the canonical way described at serialize_document().
std::string canonical_json(const nlohmann::ordered_json& value);

/// Fixed six-decimal rendering; negative zero prints as zero.
std::string format_real(double value);

/// Graphviz digraph: nodes by id, edges citer -> cited.
std::string export_dot(const CitationGraph& graph);

/// SVG 1.1 using circle, line and text elements only: year labels in the
/// left margin, then edges, then one circle per node filled per its style.
///
/// Throws std::invalid_argument when `styles` misses a node.
std::string render_svg(const LayoutedGraph& layouted, const std::map<WorkId, StyleToken>& styles,
                       const LayoutConfig& config);

}  // namespace oignon
