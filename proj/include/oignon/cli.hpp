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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oignon/clock.hpp"
#include "oignon/graph_builder.hpp"
#include "oignon/http.hpp"
#include "oignon/layout.hpp"
#include "oignon/openalex_client.hpp"

namespace oignon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotFound = 3;
inline constexpr int kExitTransport = 4;
inline constexpr int kExitInternal = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Build, Author, Serve };
enum class Format { Document, Dot, Svg };

struct CliInvocation {
  Subcommand subcommand = Subcommand::Build;
  /// DOI, WorkId or author query. Optional only for serve.
  std::optional<std::string> identifier;
  /// Treat `identifier` as an author. Implied by the author subcommand; set
  /// by --author under serve.
  bool author_mode = false;
  GraphConfig graph;
  LayoutConfig layout;
  ClientConfig client;
  Format format = Format::Document;
  /// Empty means stdout.
  std::filesystem::path out;
  std::optional<std::string> selected;
  std::optional<std::string> built_at;
  int port = 8000;
  /// serve: prebuilt document to start from.
  std::optional<std::filesystem::path> document;
  std::optional<std::filesystem::path> ui_dir;
};

/// Process-level dependencies, replaceable in tests.
struct CliEnvironment {
  /// Defaults to std::getenv.
  std::function<std::optional<std::string>(const std::string&)> getenv;
  /// Network transport; defaults to HttplibTransport.
  std::shared_ptr<Transport> transport;
  std::shared_ptr<Clock> clock;
  /// ISO 8601 UTC timestamp used when --built-at is absent.
  std::function<std::string()> now;
};

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Parses argv (without the program name). Flags take precedence over
/// OIGNON_MAILTO / OIGNON_CACHE_DIR, which take precedence over defaults.
/// Throws UsageError. Returns nullopt when help was printed to `out`.
std::optional<CliInvocation> parse_invocation(const std::vector<std::string>& args,
                                              const CliEnvironment& env, std::ostream& out);

/// Runs the pipeline once and returns the artifact bytes. Build
/// diagnostics are written to `log`.
std::string build_artifact(const CliInvocation& invocation, OpenAlexClient& client,
                           const std::string& built_at, std::ostream& log);

/// Exit codes: 0 success, 2 usage, 3 not found, 4 transport or I/O failure.
/// Only the artifact is written to `out`; everything else goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        CliEnvironment env = {});

}  // namespace oignon::cli
