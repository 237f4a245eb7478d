#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dyckreach/session.hpp"
#include "fixtures.hpp"

using namespace dyckreach;
using namespace fixtures;

namespace {

// Writes content to a unique temp file; removes it on destruction.
struct TempFile {
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("dyckreach_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".txt"))
               .string();
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string path;
};

}  // namespace

TEST_CASE("parse_updates reads every op form") {
  auto ops = parse_updates("add 0 1 2\ndel 1 1 2\nquery 0 1\nclasses\nmedges\n");
  REQUIRE(ops.size() == 5);
  CHECK(ops[0].kind == UpdateOp::Kind::insert);
  CHECK(ops[1].kind == UpdateOp::Kind::erase);
  CHECK(ops[2].kind == UpdateOp::Kind::query);
  CHECK(ops[3].kind == UpdateOp::Kind::classes);
  CHECK(ops[4].kind == UpdateOp::Kind::medges);
  CHECK(ops[1].to_line() == "del 1 1 2");
  CHECK_THROWS_AS(parse_updates("query 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_updates("frobnicate\n"), SyntaxError);
}

TEST_CASE("replay answers queries and dumps in stream order") {
  Engine engine(anchor_triangle());
  std::ostringstream out;
  auto div = replay(engine,
                    parse_updates("query 0 1\nmedges\ndel 1 1 2\nquery 0 1\n"),
                    Verify::none, out);
  CHECK_FALSE(div.has_value());
  CHECK(out.str() == "true\nmedge 0 1 2 2\nfalse\n");
}

TEST_CASE("run_session: cyclic deletion dumps seven singletons") {
  TempFile graph(cyclic_merged().serialize());
  TempFile updates("del 1 1 2\nclasses\n");
  SessionConfig cfg;
  cfg.graph_path = graph.path;
  cfg.updates_path = updates.path;
  std::ostringstream out, err;
  CHECK(run_session(cfg, out, err) == 0);
  CHECK(out.str() == "0\n1\n2\n3\n4\n5\n6\n");
}

TEST_CASE("run_session: cycle handling off diverges at step 1 under verify") {
  TempFile graph(cyclic_merged().serialize());
  TempFile updates("del 1 1 2\n");
  SessionConfig cfg;
  cfg.graph_path = graph.path;
  cfg.updates_path = updates.path;
  cfg.mode = CycleHandling::off;
  cfg.verify = Verify::rebuild;
  std::ostringstream out, err;
  CHECK(run_session(cfg, out, err) == 1);
  CHECK(err.str().starts_with("divergence at step 1"));
}

TEST_CASE("run_session: empty update stream prints the static classes") {
  TempFile graph(anchor_triangle().serialize());
  SessionConfig cfg;
  cfg.graph_path = graph.path;
  std::ostringstream out, err;
  CHECK(run_session(cfg, out, err) == 0);
  CHECK(out.str() == "0 1\n2\n");
}

TEST_CASE("run_session: unreadable input is a nonzero exit") {
  SessionConfig cfg;
  cfg.graph_path = "/nonexistent/graph.txt";
  std::ostringstream out, err;
  CHECK(run_session(cfg, out, err) == 2);
}

TEST_CASE("fuzz_verify is deterministic per seed and clean with cycles on") {
  SessionConfig cfg;
  cfg.seed = 1;
  cfg.trials = 60;
  std::ostringstream a, b;
  FuzzReport ra = fuzz_verify(cfg, a);
  FuzzReport rb = fuzz_verify(cfg, b);
  CHECK(ra.failures == 0);
  CHECK(a.str() == b.str());
}

TEST_CASE("fuzz_verify with trials=0 reports nothing") {
  SessionConfig cfg;
  cfg.trials = 0;
  std::ostringstream out;
  CHECK(fuzz_verify(cfg, out).failures == 0);
  CHECK(out.str() == "trials=0 failures=0\n");
}

TEST_CASE("fuzz_verify with cycles off finds a counterexample that replays") {
  SessionConfig cfg;
  cfg.seed = 1;
  cfg.trials = 400;
  cfg.mode = CycleHandling::off;
  std::ostringstream out;
  FuzzReport report = fuzz_verify(cfg, out);
  REQUIRE(report.failures >= 1);

  // The recorded pair must reproduce the divergence at the recorded step.
  TempFile graph(report.counterexample_graph);
  TempFile updates(report.counterexample_stream);
  SessionConfig rerun;
  rerun.graph_path = graph.path;
  rerun.updates_path = updates.path;
  rerun.mode = CycleHandling::off;
  rerun.verify = Verify::oracle;
  std::ostringstream rout, rerr;
  CHECK(run_session(rerun, rout, rerr) == 1);
  CHECK(rerr.str().starts_with("divergence at step " +
                               std::to_string(report.first_failure_step)));
}

TEST_CASE("bench: a single size yields one row per strategy without a fit") {
  SessionConfig cfg;
  cfg.family = "chain";
  cfg.min_n = 32;
  cfg.max_n = 32;
  std::ostringstream out;
  CHECK(bench(cfg, out) == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "family,n,op_count,total_ms,per_op_us,fit_exponent");
  std::getline(lines, line);
  CHECK(line.starts_with("chain-dynamic,32,31,"));
  CHECK(line.ends_with(",na"));
  std::getline(lines, line);
  CHECK(line.starts_with("chain-rebuild,32,31,"));
}

TEST_CASE("bench families build valid engines") {
  for (const std::string& family : {"chain", "adversarial", "random"}) {
    std::vector<BenchRow> rows =
        bench_series(family, 16, 32, Strategy::dynamic_update, 1);
    CHECK(rows.size() == 2);
    for (const BenchRow& r : rows) CHECK(r.op_count > 0);
  }
}
