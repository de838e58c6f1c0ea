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


#include <csignal>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "mock_transport.hpp"
#include "oignon/cli.hpp"
#include "oignon/openalex_emulator.hpp"
#include "oignon/server.hpp"
#include "oignon/snapshot.hpp"
#include "random_corpus.hpp"
#include "temp_dir.hpp"

namespace oignon::cli {
namespace {

constexpr const char* kBuiltAt = "2025-01-01T00:00:00Z";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string golden(const std::string& format) {
  return read_file(testing::golden_dir() / ("synthetic50_W1029." + format + ".golden"));
}

CliEnvironment quiet_env(std::map<std::string, std::string> vars = {}) {
  CliEnvironment env;
  env.getenv = [vars](const std::string& name) -> std::optional<std::string> {
    const auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
  env.now = [] { return std::string("2000-01-01T00:00:00Z"); };
  env.clock = std::make_shared<ManualClock>();
  return env;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, CliEnvironment env = quiet_env()) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err, std::move(env));
  return {code, out.str(), err.str()};
}

std::vector<std::string> offline_build(std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"build", "--offline", testing::synthetic_corpus().string(), "--no-cache",
                                "--reference-year", "2025", "--built-at", kBuiltAt};
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

CliInvocation parse(std::vector<std::string> args, CliEnvironment env = quiet_env()) {
  std::ostringstream out;
  auto inv = parse_invocation(args, env, out);
  if (!inv) throw std::runtime_error("help printed");
  return *inv;
}

TEST(CliTest, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("build"), std::string::npos);
  EXPECT_NE(r.out.find("serve"), std::string::npos);
  const auto sub = run_cli({"build", "--help"});
  EXPECT_EQ(sub.code, kExitOk);
  EXPECT_NE(sub.out.find("--doi"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"build"},
           {"build", "--id", "W1", "--doi", "10.1/x"},
           {"build", "--id", "W1", "--format", "png"},
           {"build", "--id", "W1", "--select", "W1"},
           {"build", "--id", "W1", "--roots", "-3"},
           {"build", "--id", "W1", "--half-life", "0"},
           {"build", "--id", "W1", "--radius-min", "30"},
           {"author"},
           {"serve", "--port", "70000"},
           {"serve", "--id", "W1", "--document", "x.json"},
       }) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, kExitUsage) << ::testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("error: "), std::string::npos);
  }
}

TEST(CliTest, MissingIdentifierShowsSubcommandHelp) {
  const auto r = run_cli({"build"});
  EXPECT_NE(r.err.find("--id"), std::string::npos);
  EXPECT_NE(r.err.find("--format"), std::string::npos);
}

TEST(CliTest, OfflineBuildMatchesGoldens) {
  for (const std::string format : {"document", "dot", "svg"}) {
    std::vector<std::string> extra{"--id", "W1029", "--format", format};
    if (format == "svg") {
      extra.push_back("--select");
      extra.push_back("W1026");
    }
    const auto r = run_cli(offline_build(extra));
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, golden(format));
    EXPECT_EQ(r.err, "");
  }
}

TEST(CliTest, DoiAndUrlFormsResolveToTheSameDocument) {
  for (const auto& extra : std::vector<std::vector<std::string>>{
           {"--doi", "10.5555/synth.1029"},
           {"--doi", "https://doi.org/10.5555/SYNTH.1029"},
           {"--id", "https://openalex.org/W1029"},
           {"--id", "w1029"}}) {
    const auto r = run_cli(offline_build(extra));
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, golden("document")) << extra[1];
  }
}

TEST(CliTest, WritesOutFile) {
  testing::TempDir dir;
  const auto path = dir.path() / "graph.json";
  const auto r = run_cli(offline_build({"--id", "W1029", "--out", path.string()}));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(read_file(path), golden("document"));

  const auto bad = run_cli(offline_build({"--id", "W1029", "--out", (dir.path() / "no" / "such" / "f").string()}));
  EXPECT_EQ(bad.code, kExitTransport);
}

TEST(CliTest, BuiltAtDefaultsToNow) {
  auto args = offline_build({"--id", "W1029"});
  args.erase(args.begin() + 6, args.begin() + 8);
  const auto r = run_cli(args);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["built_at"], "2000-01-01T00:00:00Z");
}

TEST(CliTest, NotFoundExitsThree) {
  const auto r = run_cli(offline_build({"--id", "W4242"}));
  EXPECT_EQ(r.code, kExitNotFound);
  EXPECT_EQ(r.out, "");
  const auto author = run_cli({"author", "--offline", testing::synthetic_corpus().string(), "--author", "Nobody"});
  EXPECT_EQ(author.code, kExitNotFound);
}

TEST(CliTest, UnknownSelectionIsUsage) {
  const auto r = run_cli(offline_build({"--id", "W1029", "--format", "svg", "--select", "W1050"}));
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.out, "");
}

TEST(CliTest, UnreadableSnapshotIsUsage) {
  const auto r = run_cli({"build", "--offline", "/nonexistent/corpus.jsonl", "--id", "W1"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliTest, TransportFailureExitsFour) {
  auto env = quiet_env();
  env.transport = std::make_shared<testing::ScriptedTransport>();
  const auto r = run_cli({"build", "--id", "W1029", "--no-cache"}, env);
  EXPECT_EQ(r.code, kExitTransport);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("error: "), std::string::npos);
}

TEST(CliTest, OnlineBuildThroughTransport) {
  auto env = quiet_env();
  auto counting = std::make_shared<testing::CountingTransport>(
      std::make_shared<OpenAlexEmulator>(load_snapshot(testing::synthetic_corpus()).works));
  env.transport = counting;
  const auto r = run_cli({"build", "--id", "W1029", "--no-cache", "--reference-year", "2025", "--built-at", kBuiltAt,
                          "--mailto", "me@example.org"},
                         env);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_GT(counting->calls(), 0u);
  for (const auto& url : counting->urls()) EXPECT_NE(url.find("mailto=me%40example.org"), std::string::npos) << url;
  const auto online = nlohmann::json::parse(r.out);
  const auto offline = nlohmann::json::parse(golden("document"));
  EXPECT_EQ(online["nodes"], offline["nodes"]);
  EXPECT_EQ(online["edges"], offline["edges"]);
}

TEST(CliTest, AuthorBuild) {
  const auto r = run_cli({"author", "--offline", testing::synthetic_corpus().string(), "--author", "A102",
                          "--built-at", kBuiltAt});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["source"].is_null());
  for (const auto& node : doc["nodes"]) EXPECT_EQ(node["role"], "AuthorWork");

  const auto by_name = run_cli({"author", "--offline", testing::synthetic_corpus().string(), "--author", "J. Smith"});
  ASSERT_EQ(by_name.code, kExitOk) << by_name.err;
  EXPECT_NE(by_name.err.find("note: "), std::string::npos);
}

TEST(CliTest, MailtoPrecedence) {
  const std::vector<std::string> base{"build", "--id", "W1"};
  EXPECT_FALSE(parse(base).client.mailto.has_value());
  EXPECT_EQ(parse(base, quiet_env({{"OIGNON_MAILTO", "env@x.org"}})).client.mailto, "env@x.org");
  EXPECT_FALSE(parse(base, quiet_env({{"OIGNON_MAILTO", ""}})).client.mailto.has_value());
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--mailto", "flag@x.org"});
  EXPECT_EQ(parse(with_flag, quiet_env({{"OIGNON_MAILTO", "env@x.org"}})).client.mailto, "flag@x.org");
}

TEST(CliTest, CacheDirPrecedence) {
  const std::vector<std::string> base{"build", "--id", "W1"};
  EXPECT_EQ(parse(base).client.cache_dir, std::filesystem::path());
  EXPECT_EQ(parse(base, quiet_env({{"HOME", "/home/u"}})).client.cache_dir, "/home/u/.cache/oignon");
  EXPECT_EQ(parse(base, quiet_env({{"HOME", "/home/u"}, {"XDG_CACHE_HOME", "/xdg"}})).client.cache_dir,
            "/xdg/oignon");
  EXPECT_EQ(parse(base, quiet_env({{"XDG_CACHE_HOME", "/xdg"}, {"OIGNON_CACHE_DIR", "/c"}})).client.cache_dir, "/c");
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--cache-dir", "/flag"});
  EXPECT_EQ(parse(with_flag, quiet_env({{"OIGNON_CACHE_DIR", "/c"}})).client.cache_dir, "/flag");
  auto disabled = with_flag;
  disabled.push_back("--no-cache");
  EXPECT_EQ(parse(disabled, quiet_env({{"OIGNON_CACHE_DIR", "/c"}})).client.cache_dir, std::filesystem::path());
}

TEST(CliTest, GraphAndLayoutFlags) {
  const auto inv = parse({"build", "--doi", "10.1/x", "--roots", "3", "--branches", "0", "--branch-seed-cap", "9",
                          "--candidate-pool-cap", "11", "--half-life", "2.5", "--reference-year", "2020",
                          "--row-height", "70", "--column-width", "50", "--radius-min", "3", "--radius-max", "20",
                          "--format", "dot"});
  EXPECT_EQ(inv.identifier, "10.1/x");
  EXPECT_EQ(inv.graph.top_roots_k, 3u);
  EXPECT_EQ(inv.graph.top_branches_k, 0u);
  EXPECT_EQ(inv.graph.branch_seed_cap, 9u);
  EXPECT_EQ(inv.graph.candidate_pool_cap, 11u);
  EXPECT_EQ(inv.graph.recency.half_life_years, 2.5);
  EXPECT_EQ(inv.graph.recency.reference_year, 2020);
  EXPECT_EQ(inv.layout.row_height, 70);
  EXPECT_EQ(inv.layout.column_width, 50);
  EXPECT_EQ(inv.layout.radius_min, 3);
  EXPECT_EQ(inv.layout.radius_max, 20);
  EXPECT_EQ(inv.format, Format::Dot);
  EXPECT_FALSE(inv.author_mode);

  const auto serve = parse({"serve", "--author", "A1", "--port", "0"});
  EXPECT_EQ(serve.subcommand, Subcommand::Serve);
  EXPECT_TRUE(serve.author_mode);
  EXPECT_EQ(serve.port, 0);
  EXPECT_EQ(parse({"serve"}).port, 8000);
}

TEST(CliTest, ServePortInUse) {
  GraphService service([](const BuildRequest&) { return std::string(); }, BuildRequest{});
  GraphServer holder(service);
  ASSERT_TRUE(holder.bind("127.0.0.1", 0));
  const auto r = run_cli({"serve", "--document", (testing::golden_dir() / "synthetic50_W1029.document.golden").string(),
                          "--port", std::to_string(holder.port())});
  EXPECT_EQ(r.code, kExitTransport);
  EXPECT_NE(r.err.find("cannot bind"), std::string::npos);
}

TEST(CliTest, ServeRejectsBadDocument) {
  testing::TempDir dir;
  std::ofstream(dir.path() / "bad.json") << "{";
  EXPECT_EQ(run_cli({"serve", "--document", (dir.path() / "bad.json").string(), "--port", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"serve", "--document", (dir.path() / "missing.json").string(), "--port", "0"}).code, kExitUsage);
}

// Thread-safe sink so the test can watch stderr while the server runs.
// Recursive because xsputn falls back to overflow.
class SharedBuf : public std::stringbuf {
 public:
  std::string snapshot() {
    std::lock_guard lock(mutex_);
    return str();
  }

 protected:
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    std::lock_guard lock(mutex_);
    return std::stringbuf::xsputn(s, n);
  }
  int_type overflow(int_type c) override {
    std::lock_guard lock(mutex_);
    return std::stringbuf::overflow(c);
  }

 private:
  std::recursive_mutex mutex_;
};

TEST(CliTest, ServeUntilInterrupted) {
  SharedBuf err_buf;
  std::ostream err(&err_buf);
  std::ostringstream out;
  int code = -1;
  std::jthread runner([&] {
    code = run({"serve", "--offline", testing::synthetic_corpus().string(), "--id", "W1029", "--reference-year",
                "2025", "--built-at", kBuiltAt, "--port", "0"},
               out, err, quiet_env());
  });
  int port = 0;
  for (int i = 0; i < 400 && port == 0; ++i) {
    const auto text = err_buf.snapshot();
    const auto pos = text.find("serving on http://127.0.0.1:");
    if (pos != std::string::npos) {
      port = std::stoi(text.substr(pos + 28));
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  ASSERT_GT(port, 0) << err_buf.snapshot();
  // Stops the server even when an assertion below returns early.
  struct Interrupt {
    bool armed = true;
    ~Interrupt() {
      if (armed) std::raise(SIGINT);
    }
  } interrupt;
  httplib::Client http("127.0.0.1", port);
  auto res = http.Get("/api/graph");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, golden("document"));
  res = http.Post("/api/build", R"({"identifier": "W1022", "config": {"roots": 2}})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["source"], "W1022");
  res = http.Get("/api/work/W1022");
  ASSERT_TRUE(res);
  EXPECT_EQ(nlohmann::json::parse(res->body)["role"], "Source");

  interrupt.armed = false;
  std::raise(SIGINT);
  runner.join();
  EXPECT_EQ(code, kExitOk);
  EXPECT_EQ(out.str(), "");
}

TEST(UtcTimestampTest, Shape) {
  const auto ts = utc_timestamp();
  ASSERT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts[4], '-');
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

}  // namespace
}  // namespace oignon::cli
