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

#include "oignon/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>

#include "oignon/errors.hpp"
#include "oignon/export.hpp"
#include "oignon/server.hpp"

namespace oignon::cli {

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

std::optional<std::string> nonempty_env(const CliEnvironment& env, const std::string& name) {
  auto value = env.getenv(name);
  if (value && value->empty()) return std::nullopt;
  return value;
}

std::filesystem::path default_cache_dir(const CliEnvironment& env) {
  if (auto dir = nonempty_env(env, "OIGNON_CACHE_DIR")) return *dir;
  if (auto xdg = nonempty_env(env, "XDG_CACHE_HOME")) return std::filesystem::path(*xdg) / "oignon";
  if (auto home = nonempty_env(env, "HOME")) return std::filesystem::path(*home) / ".cache" / "oignon";
  return {};
}

// Options shared by every subcommand, bound to one set of variables; only the
// chosen subcommand parses.
struct RawOptions {
  std::optional<std::string> id;
  std::optional<std::string> doi;
  std::optional<std::string> author;
  std::optional<std::size_t> roots;
  std::optional<std::size_t> branches;
  std::optional<std::size_t> branch_seed_cap;
  std::optional<std::size_t> candidate_pool_cap;
  std::optional<double> half_life;
  std::optional<int> reference_year;
  std::optional<double> row_height;
  std::optional<double> column_width;
  std::optional<double> radius_min;
  std::optional<double> radius_max;
  std::optional<std::string> offline;
  std::optional<std::string> mailto;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::optional<std::string> base_url;
  std::string format = "document";
  std::optional<std::string> out;
  std::optional<std::string> select;
  std::optional<std::string> built_at;
  int port = 8000;
  std::optional<std::string> document;
  std::optional<std::string> ui_dir;
};

void add_graph_options(CLI::App& app, RawOptions& o) {
  app.add_option("--roots", o.roots, "Number of top-ranked roots (references side)");
  app.add_option("--branches", o.branches, "Number of top-ranked branches (citers side)");
  app.add_option("--branch-seed-cap", o.branch_seed_cap, "Maximum number of direct citers");
  app.add_option("--candidate-pool-cap", o.candidate_pool_cap, "Candidate pool size per direction");
  app.add_option("--half-life", o.half_life, "Recency constant h");
  app.add_option("--reference-year", o.reference_year, "Year treated as now by the recency weight");
  app.add_option("--row-height", o.row_height, "Vertical distance between year rows");
  app.add_option("--column-width", o.column_width, "Horizontal distance between slots");
  app.add_option("--radius-min", o.radius_min, "Radius of an uncited work");
  app.add_option("--radius-max", o.radius_max, "Radius of the most cited work");
  app.add_option("--offline", o.offline, "Answer every request from this JSONL corpus");
  app.add_option("--mailto", o.mailto, "Contact address for the OpenAlex polite pool [env OIGNON_MAILTO]");
  app.add_option("--cache-dir", o.cache_dir, "Response cache directory [env OIGNON_CACHE_DIR]");
  app.add_flag("--no-cache", o.no_cache, "Disable the response cache");
  app.add_option("--base-url", o.base_url, "OpenAlex API base URL");
  app.add_option("--built-at", o.built_at, "Timestamp recorded in the document");
}

void add_identifier_options(CLI::App& app, RawOptions& o, bool author) {
  if (author) {
    app.add_option("--author", o.author, "Author id (A123) or name");
    return;
  }
  auto* id = app.add_option("--id", o.id, "OpenAlex work id or URL");
  auto* doi = app.add_option("--doi", o.doi, "DOI or DOI URL");
  id->excludes(doi);
}

void add_output_options(CLI::App& app, RawOptions& o) {
  app.add_option("--format", o.format, "Artifact format")
      ->check(CLI::IsMember({"document", "dot", "svg"}));
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--select", o.select, "Work highlighted in the svg output");
}

Format parse_format(const std::string& name) {
  if (name == "dot") return Format::Dot;
  if (name == "svg") return Format::Svg;
  return Format::Document;
}

CliInvocation assemble(Subcommand sub, const RawOptions& o, const CliEnvironment& env) {
  CliInvocation inv;
  inv.subcommand = sub;

  const int identifiers = (o.id ? 1 : 0) + (o.doi ? 1 : 0) + (o.author ? 1 : 0);
  if (identifiers > 1) throw UsageError("give exactly one of --id, --doi or --author");
  if (o.id) inv.identifier = *o.id;
  if (o.doi) inv.identifier = *o.doi;
  if (o.author) inv.identifier = *o.author;
  if (inv.identifier && inv.identifier->empty()) throw UsageError("identifier must not be empty");
  inv.author_mode = sub == Subcommand::Author || o.author.has_value();
  if (sub == Subcommand::Build && !inv.identifier) throw UsageError("one of --id or --doi is required");
  if (sub == Subcommand::Author && !inv.identifier) throw UsageError("--author is required");

  auto& g = inv.graph;
  if (o.roots) g.top_roots_k = *o.roots;
  if (o.branches) g.top_branches_k = *o.branches;
  if (o.branch_seed_cap) g.branch_seed_cap = *o.branch_seed_cap;
  if (o.candidate_pool_cap) g.candidate_pool_cap = *o.candidate_pool_cap;
  if (o.half_life) g.recency.half_life_years = *o.half_life;
  if (o.reference_year) g.recency.reference_year = *o.reference_year;

  auto& l = inv.layout;
  if (o.row_height) l.row_height = *o.row_height;
  if (o.column_width) l.column_width = *o.column_width;
  if (o.radius_min) l.radius_min = *o.radius_min;
  if (o.radius_max) l.radius_max = *o.radius_max;

  auto& c = inv.client;
  if (o.base_url) c.base_url = *o.base_url;
  if (o.offline) c.offline_snapshot = std::filesystem::path(*o.offline);
  c.mailto = o.mailto ? o.mailto : nonempty_env(env, "OIGNON_MAILTO");
  if (!o.no_cache) c.cache_dir = o.cache_dir ? std::filesystem::path(*o.cache_dir) : default_cache_dir(env);

  inv.format = parse_format(o.format);
  if (o.out) inv.out = *o.out;
  inv.selected = o.select;
  if (inv.selected && inv.format != Format::Svg) throw UsageError("--select requires --format svg");
  inv.built_at = o.built_at;
  if (o.port < 0 || o.port > 65535) throw UsageError("--port must be within 0..65535");
  inv.port = o.port;
  if (o.document) inv.document = std::filesystem::path(*o.document);
  if (o.ui_dir) inv.ui_dir = std::filesystem::path(*o.ui_dir);
  if (inv.document && inv.identifier) throw UsageError("--document cannot be combined with an identifier");

  try {
    g.validate();
    l.validate();
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return inv;
}

CliEnvironment with_defaults(CliEnvironment env) {
  if (!env.getenv) {
    env.getenv = [](const std::string& name) -> std::optional<std::string> {
      if (const char* value = std::getenv(name.c_str())) return std::string(value);
      return std::nullopt;
    };
  }
  if (!env.now) env.now = utc_timestamp;
  return env;
}

void write_artifact(const CliInvocation& inv, const std::string& bytes, std::ostream& out) {
  if (inv.out.empty()) {
    out << bytes;
    out.flush();
    return;
  }
  std::ofstream file(inv.out, std::ios::binary | std::ios::trunc);
  file << bytes;
  file.close();
  if (!file) throw std::filesystem::filesystem_error("cannot write output", inv.out, std::make_error_code(std::errc::io_error));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int serve(const CliInvocation& inv, const CliEnvironment& env, std::ostream& err) {
  OpenAlexClient client(inv.client, env.transport, env.clock);
  auto builder = [&](const BuildRequest& request) {
    CliInvocation job = inv;
    job.identifier = request.identifier;
    job.author_mode = request.mode == BuildRequest::Mode::Author;
    job.graph = request.graph;
    job.layout = request.layout;
    job.format = Format::Document;
    return build_artifact(job, client, inv.built_at.value_or(env.now()), err);
  };
  BuildRequest defaults;
  defaults.graph = inv.graph;
  defaults.layout = inv.layout;
  GraphService service(builder, defaults);

  if (inv.document) {
    try {
      service.set_document(read_file(*inv.document));
    } catch (const std::invalid_argument& e) {
      throw UsageError(fmt::format("{}: {}", inv.document->string(), e.what()));
    }
  } else if (inv.identifier) {
    BuildRequest initial = defaults;
    initial.identifier = *inv.identifier;
    initial.mode = inv.author_mode ? BuildRequest::Mode::Author : BuildRequest::Mode::Paper;
    service.set_document(builder(initial));
  }

  GraphServer server(service, inv.ui_dir);
  if (!server.bind("127.0.0.1", inv.port)) {
    err << fmt::format("error: cannot bind 127.0.0.1:{} (port in use?)\n", inv.port);
    return kExitTransport;
  }
  err << fmt::format("serving on http://127.0.0.1:{}/\n", server.port());
  err.flush();

  g_interrupted.store(false);
  auto previous = std::signal(SIGINT, on_interrupt);
  std::jthread watcher([&server](std::stop_token stop) {
    while (!stop.stop_requested()) {
      if (g_interrupted.load()) server.stop();
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  server.listen();
  watcher.request_stop();
  watcher.join();
  std::signal(SIGINT, previous);
  return kExitOk;
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::optional<CliInvocation> parse_invocation(const std::vector<std::string>& args,
                                              const CliEnvironment& env_in, std::ostream& out) {
  const auto env = with_defaults(env_in);
  CLI::App app{"Build citation graphs around a publication or an author.", "oignon"};
  app.require_subcommand(1, 1);
  RawOptions o;

  auto* build = app.add_subcommand("build", "Graph around a source work");
  add_identifier_options(*build, o, false);
  add_graph_options(*build, o);
  add_output_options(*build, o);

  auto* author = app.add_subcommand("author", "Graph of one author's works");
  add_identifier_options(*author, o, true);
  add_graph_options(*author, o);
  add_output_options(*author, o);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API and viewer on 127.0.0.1");
  add_identifier_options(*serve_cmd, o, false);
  serve_cmd->add_option("--author", o.author, "Author id (A123) or name");
  add_graph_options(*serve_cmd, o);
  serve_cmd->add_option("--port", o.port, "TCP port (0 picks a free one)");
  serve_cmd->add_option("--document", o.document, "Serve this prebuilt document");
  serve_cmd->add_option("--ui-dir", o.ui_dir, "Static viewer assets served at /");

  // CLI11 wants argv order reversed for its vector overload.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    throw UsageError(fmt::format("{}\n{}", e.what(), sub->help()));
  }

  const auto* chosen = app.get_subcommands().front();
  const Subcommand sub = chosen == build ? Subcommand::Build
                         : chosen == author ? Subcommand::Author
                                            : Subcommand::Serve;
  try {
    return assemble(sub, o, env);
  } catch (const UsageError& e) {
    throw UsageError(fmt::format("{}\n{}", e.what(), chosen->help()));
  }
}

std::string build_artifact(const CliInvocation& inv, OpenAlexClient& client,
                           const std::string& built_at, std::ostream& log) {
  if (!inv.identifier) throw UsageError("no identifier given");
  const CitationGraph graph = inv.author_mode ? build_author_graph(*inv.identifier, inv.graph, client)
                                              : build_graph(*inv.identifier, inv.graph, client);
  for (const auto& message : graph.diagnostics.messages) log << "note: " << message << '\n';
  const auto layouted = layout_graph(graph, inv.layout);
  switch (inv.format) {
    case Format::Dot:
      return export_dot(graph);
    case Format::Svg: {
      std::optional<WorkId> selected;
      if (inv.selected) selected = WorkId::canonical(*inv.selected);
      return render_svg(layouted, style_roles(graph, selected), inv.layout);
    }
    case Format::Document:
      break;
  }
  return export_document(layouted, graph, built_at);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, CliEnvironment env) {
  env = with_defaults(std::move(env));
  try {
    const auto inv = parse_invocation(args, env, out);
    if (!inv) return kExitOk;
    if (inv->subcommand == Subcommand::Serve) return serve(*inv, env, err);

    OpenAlexClient client(inv->client, env.transport, env.clock);
    const auto bytes = build_artifact(*inv, client, inv->built_at.value_or(env.now()), err);
    write_artifact(*inv, bytes, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownSelectionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SnapshotError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotFound;
  } catch (const TransportError& e) {
    err << "error: " << e.what() << '\n';
    return kExitTransport;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitTransport;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace oignon::cli
