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

#include "oignon/export.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "oignon/errors.hpp"

namespace oignon {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kDotLabelLength = 40;

ordered_json optional_int(const std::optional<int>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_string(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json metrics_json(const NodeMetrics& metrics) {
  if (const auto* root = std::get_if<RootMetrics>(&metrics)) {
    ordered_json j;
    j["kind"] = "root";
    j["cited_count"] = root->cited_count;
    j["cocited_count"] = root->cocited_count;
    j["cociting_count"] = root->cociting_count;
    j["total_rank"] = root->total_rank;
    return j;
  }
  if (const auto* branch = std::get_if<BranchMetrics>(&metrics)) {
    ordered_json j;
    j["kind"] = "branch";
    j["citing_count"] = branch->citing_count;
    j["cociting_count"] = branch->cociting_count;
    j["weighted_cocited"] = branch->weighted_cocited;
    j["total_rank"] = branch->total_rank;
    return j;
  }
  return nullptr;
}

void write_canonical(const ordered_json& value, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (value.type()) {
    case ordered_json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += ordered_json(key).dump(-1, ' ', false, ordered_json::error_handler_t::replace);
        out += ": ";
        write_canonical(item, out, indent + 2);
      }
      out += '\n';
      out.append(static_cast<std::size_t>(indent), ' ');
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_canonical(item, out, indent + 2);
      }
      out += '\n';
      out.append(static_cast<std::size_t>(indent), ' ');
      out += ']';
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_real(value.get<double>());
      return;
    default:
      out += value.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
      return;
  }
}

// Fields read back from a parsed document.
const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("document is missing field ") + key);
  return *it;
}

std::optional<int> read_optional_int(const nlohmann::json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<int>();
}

NodeMetrics read_metrics(const nlohmann::json& j, const WorkId& id) {
  if (j.is_null()) return std::monostate{};
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "root") {
    return RootMetrics{id, field(j, "cocited_count").get<std::uint64_t>(),
                       field(j, "cociting_count").get<std::uint64_t>(),
                       field(j, "cited_count").get<std::uint64_t>(),
                       field(j, "total_rank").get<std::uint64_t>()};
  }
  if (kind == "branch") {
    return BranchMetrics{id, field(j, "citing_count").get<std::uint64_t>(),
                         field(j, "cociting_count").get<std::uint64_t>(),
                         field(j, "weighted_cocited").get<double>(),
                         field(j, "total_rank").get<double>()};
  }
  throw std::invalid_argument("unknown metrics kind " + kind);
}

bool is_bare_dot_id(std::string_view id) {
  if (id.empty() || std::isdigit(static_cast<unsigned char>(id.front()))) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n' || c == '\r') {
      out.push_back(' ');
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::string dot_id(const WorkId& id) {
  return is_bare_dot_id(id.str()) ? id.str() : "\"" + dot_escape(id.str()) + "\"";
}

// Cuts after `limit` code points, appending "..." when something was dropped.
std::string truncate_utf8(std::string_view text, std::size_t limit) {
  std::size_t points = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (points == limit) return std::string(text.substr(0, i)) + "...";
    ++points;
  }
  return std::string(text);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  auto text = fmt::format("{:.6f}", value);
  if (text == "-0.000000") text.erase(0, 1);
  return text;
}

const DocumentNode* GraphDocument::find(const WorkId& id) const {
  for (const auto& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

GraphDocument make_document(const LayoutedGraph& layouted, const CitationGraph& graph,
                            std::string built_at) {
  std::set<WorkId> laid_out;
  for (const auto& node : layouted.nodes) laid_out.insert(node.id);
  if (laid_out.size() != layouted.nodes.size() || laid_out.size() != graph.nodes.size() ||
      !std::all_of(laid_out.begin(), laid_out.end(),
                   [&graph](const WorkId& id) { return graph.nodes.contains(id); })) {
    throw InconsistentInputsError("layout and graph describe different node sets");
  }

  GraphDocument doc;
  doc.source = graph.source;
  doc.built_at = std::move(built_at);
  doc.graph_config = graph.config;
  doc.layout_config = layouted.config;
  for (const auto& placed : layouted.nodes) {
    const auto& node = graph.nodes.at(placed.id);
    doc.nodes.push_back(DocumentNode{placed.id, node.work.title, node.work.publication_year,
                                     node.work.doi, node.work.authors,
                                     node.work.global_citation_count, node.role, node.metrics,
                                     placed.x, placed.y, placed.radius});
  }
  doc.edges.assign(graph.edges.begin(), graph.edges.end());
  doc.year_ticks = layouted.year_ticks;
  doc.diagnostics = graph.diagnostics;
  return doc;
}

ordered_json to_json(const DocumentNode& node) {
  ordered_json j;
  j["id"] = node.id.str();
  j["title"] = node.title;
  j["year"] = optional_int(node.year);
  j["doi"] = optional_string(node.doi);
  j["authors"] = node.authors;
  j["citations"] = node.citations;
  j["role"] = std::string(to_string(node.role));
  j["metrics"] = metrics_json(node.metrics);
  j["x"] = node.x;
  j["y"] = node.y;
  j["radius"] = node.radius;
  return j;
}

ordered_json to_json(const GraphDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["source"] = doc.source ? ordered_json(doc.source->str()) : ordered_json(nullptr);
  j["built_at"] = doc.built_at;

  ordered_json config;
  config["top_roots_k"] = doc.graph_config.top_roots_k;
  config["top_branches_k"] = doc.graph_config.top_branches_k;
  config["branch_seed_cap"] = doc.graph_config.branch_seed_cap;
  config["candidate_pool_cap"] = doc.graph_config.candidate_pool_cap;
  config["half_life_years"] = doc.graph_config.recency.half_life_years;
  config["reference_year"] = doc.graph_config.recency.reference_year;
  config["layout"]["row_height"] = doc.layout_config.row_height;
  config["layout"]["column_width"] = doc.layout_config.column_width;
  config["layout"]["radius_min"] = doc.layout_config.radius_min;
  config["layout"]["radius_max"] = doc.layout_config.radius_max;
  j["config"] = std::move(config);

  auto nodes = ordered_json::array();
  for (const auto& node : doc.nodes) nodes.push_back(to_json(node));
  j["nodes"] = std::move(nodes);

  auto edges = ordered_json::array();
  for (const auto& edge : doc.edges) {
    edges.push_back(ordered_json{{"from", edge.citer.str()}, {"to", edge.cited.str()}});
  }
  j["edges"] = std::move(edges);

  auto ticks = ordered_json::array();
  for (const auto& tick : doc.year_ticks) {
    ticks.push_back(ordered_json{{"year", optional_int(tick.year)}, {"y", tick.y}});
  }
  j["year_ticks"] = std::move(ticks);

  const auto& d = doc.diagnostics;
  ordered_json diagnostics;
  diagnostics["network_requests"] = d.stats.network_requests;
  diagnostics["cache_hits"] = d.stats.cache_hits;
  diagnostics["works_fetched"] = d.stats.works_fetched;
  diagnostics["truncated_listings"] = d.stats.truncated_listings;
  diagnostics["branch_seeds_truncated"] = d.branch_seeds_truncated;
  diagnostics["root_pool_truncated"] = d.root_pool_truncated;
  diagnostics["branch_pool_truncated"] = d.branch_pool_truncated;
  auto missing = ordered_json::array();
  for (const auto& id : d.missing_ids) missing.push_back(id.str());
  diagnostics["missing_ids"] = std::move(missing);
  diagnostics["messages"] = d.messages;
  j["diagnostics"] = std::move(diagnostics);
  return j;
}

std::string canonical_json(const ordered_json& value) {
  std::string out;
  write_canonical(value, out, 0);
  out += '\n';
  return out;
}

std::string serialize_document(const GraphDocument& document) {
  return canonical_json(to_json(document));
}

std::string export_document(const LayoutedGraph& layouted, const CitationGraph& graph,
                            std::string built_at) {
  return serialize_document(make_document(layouted, graph, std::move(built_at)));
}

GraphDocument parse_document(std::string_view text) {
  const auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("document is not a JSON object");
  if (j.empty() || j.begin().key() != "schema_version") {
    throw std::invalid_argument("schema_version must be the first key");
  }
  try {
    GraphDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion) {
      throw std::invalid_argument("unsupported schema_version " + std::to_string(doc.schema_version));
    }
    const auto root = nlohmann::json::parse(text);
    if (const auto& source = field(root, "source"); !source.is_null()) {
      doc.source = WorkId(source.get<std::string>());
    }
    doc.built_at = field(root, "built_at").get<std::string>();

    const auto& config = field(root, "config");
    doc.graph_config.top_roots_k = field(config, "top_roots_k").get<std::size_t>();
    doc.graph_config.top_branches_k = field(config, "top_branches_k").get<std::size_t>();
    doc.graph_config.branch_seed_cap = field(config, "branch_seed_cap").get<std::size_t>();
    doc.graph_config.candidate_pool_cap = field(config, "candidate_pool_cap").get<std::size_t>();
    doc.graph_config.recency.half_life_years = field(config, "half_life_years").get<double>();
    doc.graph_config.recency.reference_year = field(config, "reference_year").get<int>();
    const auto& layout = field(config, "layout");
    doc.layout_config.row_height = field(layout, "row_height").get<double>();
    doc.layout_config.column_width = field(layout, "column_width").get<double>();
    doc.layout_config.radius_min = field(layout, "radius_min").get<double>();
    doc.layout_config.radius_max = field(layout, "radius_max").get<double>();

    for (const auto& n : field(root, "nodes")) {
      WorkId id(field(n, "id").get<std::string>());
      DocumentNode node{id,
                        field(n, "title").get<std::string>(),
                        read_optional_int(field(n, "year")),
                        std::nullopt,
                        field(n, "authors").get<std::vector<std::string>>(),
                        field(n, "citations").get<std::uint64_t>(),
                        node_role_from_string(field(n, "role").get<std::string>()),
                        read_metrics(field(n, "metrics"), id),
                        field(n, "x").get<double>(),
                        field(n, "y").get<double>(),
                        field(n, "radius").get<double>()};
      if (const auto& doi = field(n, "doi"); !doi.is_null()) node.doi = doi.get<std::string>();
      doc.nodes.push_back(std::move(node));
    }
    for (const auto& e : field(root, "edges")) {
      doc.edges.push_back(Edge{WorkId(field(e, "from").get<std::string>()),
                               WorkId(field(e, "to").get<std::string>())});
    }
    for (const auto& t : field(root, "year_ticks")) {
      doc.year_ticks.push_back(YearTick{read_optional_int(field(t, "year")), field(t, "y").get<double>()});
    }
    const auto& d = field(root, "diagnostics");
    doc.diagnostics.stats.network_requests = field(d, "network_requests").get<std::uint64_t>();
    doc.diagnostics.stats.cache_hits = field(d, "cache_hits").get<std::uint64_t>();
    doc.diagnostics.stats.works_fetched = field(d, "works_fetched").get<std::uint64_t>();
    doc.diagnostics.stats.truncated_listings = field(d, "truncated_listings").get<std::uint64_t>();
    doc.diagnostics.branch_seeds_truncated = field(d, "branch_seeds_truncated").get<bool>();
    doc.diagnostics.root_pool_truncated = field(d, "root_pool_truncated").get<bool>();
    doc.diagnostics.branch_pool_truncated = field(d, "branch_pool_truncated").get<bool>();
    for (const auto& id : field(d, "missing_ids")) doc.diagnostics.missing_ids.emplace_back(id.get<std::string>());
    doc.diagnostics.messages = field(d, "messages").get<std::vector<std::string>>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

std::string export_dot(const CitationGraph& graph) {
  std::string out = "digraph citations {\n";
  for (const auto& [id, node] : graph.nodes) {
    const std::string year =
        node.work.publication_year ? std::to_string(*node.work.publication_year) : "n.d.";
    const std::string title = node.work.title.empty() ? id.str() : node.work.title;
    out += fmt::format("  {} [label=\"{}\\n({})\"];\n", dot_id(id),
                       dot_escape(truncate_utf8(title, kDotLabelLength)), year);
  }
  for (const auto& edge : graph.edges) {
    out += fmt::format("  {} -> {};\n", dot_id(edge.citer), dot_id(edge.cited));
  }
  out += "}\n";
  return out;
}

std::string render_svg(const LayoutedGraph& layouted, const std::map<WorkId, StyleToken>& styles,
                       const LayoutConfig& config) {
  for (const auto& node : layouted.nodes) {
    if (!styles.contains(node.id)) {
      throw std::invalid_argument("no style for node " + node.id.str());
    }
  }
  const double margin = config.radius_max;
  const double label_width = 2.0 * config.column_width;
  const auto& b = layouted.bounds;
  const double min_x = b.min_x - margin - label_width;
  const double min_y = b.min_y - margin;
  const double width = (b.max_x + margin) - min_x;
  const double height = (b.max_y + margin) - min_y;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"{} {} {} {}\">\n",
      format_real(width), format_real(height), format_real(min_x), format_real(min_y),
      format_real(width), format_real(height));

  for (const auto& tick : layouted.year_ticks) {
    const std::string label = tick.year ? std::to_string(*tick.year) : "n.d.";
    out += fmt::format(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
        "fill=\"#555555\">{}</text>\n",
        format_real(min_x + 4.0), format_real(tick.y + 4.0), xml_escape(label));
  }

  std::map<WorkId, const PositionedNode*> placed;
  for (const auto& node : layouted.nodes) placed.emplace(node.id, &node);
  for (const auto& edge : layouted.edges) {
    const auto from = placed.find(edge.citer);
    const auto to = placed.find(edge.cited);
    if (from == placed.end() || to == placed.end()) continue;
    out += fmt::format(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#9e9e9e\" stroke-width=\"1\"/>\n",
        format_real(from->second->x), format_real(from->second->y), format_real(to->second->x),
        format_real(to->second->y));
  }

  for (const auto& node : layouted.nodes) {
    out += fmt::format(
        "  <circle id=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#37474f\" "
        "stroke-width=\"1\"/>\n",
        xml_escape(node.id.str()), format_real(node.x), format_real(node.y),
        format_real(node.radius), fill_color(styles.at(node.id)));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace oignon
