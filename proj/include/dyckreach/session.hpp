#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dyckreach/engine.hpp"
#include "dyckreach/oracle.hpp"

namespace dyckreach {

enum class Verify { none, rebuild, oracle };

struct SessionConfig {
  std::string graph_path;
  std::string updates_path;  // empty = no updates
  CycleHandling mode = CycleHandling::on;
  Strategy strategy = Strategy::dynamic_update;
  Verify verify = Verify::none;
  std::uint64_t seed = 1;
  int trials = 1000;
  int max_ops = 20;
  std::string family = "chain";
  int min_n = 64;
  int max_n = 1024;
};

// One element of an update stream.
struct UpdateOp {
  enum class Kind { insert, erase, query, classes, medges };
  Kind kind;
  NodeId u = 0;
  int label = 1;
  NodeId v = 0;

  std::string to_line() const {
    std::ostringstream out;
    switch (kind) {
      case Kind::insert:
        out << "add " << u << " " << label << " " << v;
        break;
      case Kind::erase:
        out << "del " << u << " " << label << " " << v;
        break;
      case Kind::query:
        out << "query " << u << " " << v;
        break;
      case Kind::classes:
        out << "classes";
        break;
      case Kind::medges:
        out << "medges";
        break;
    }
    return out.str();
  }
};

inline std::vector<UpdateOp> parse_updates(std::string_view text) {
  std::vector<UpdateOp> ops;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    UpdateOp op{};
    if (word == "add" || word == "del") {
      op.kind = (word == "add") ? UpdateOp::Kind::insert : UpdateOp::Kind::erase;
      if (!(ls >> op.u >> op.label >> op.v)) {
        throw SyntaxError(lineno, "expected '" + word + " <u> <kind> <v>'");
      }
    } else if (word == "query") {
      op.kind = UpdateOp::Kind::query;
      if (!(ls >> op.u >> op.v)) {
        throw SyntaxError(lineno, "expected 'query <u> <v>'");
      }
    } else if (word == "classes") {
      op.kind = UpdateOp::Kind::classes;
    } else if (word == "medges") {
      op.kind = UpdateOp::Kind::medges;
    } else {
      throw SyntaxError(lineno, "unknown update '" + word + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

struct Divergence {
  int step;  // 1-based index into the update stream
  Fingerprint expected;
  Fingerprint actual;
};

// Replays an update stream, answering query/dump lines on `out`. With
// verification, the partition is compared against the chosen arbiter after
// every mutating step; the first divergence is returned.
inline std::optional<Divergence> replay(Engine& engine,
                                        const std::vector<UpdateOp>& ops,
                                        Verify verify, std::ostream& out) {
  int step = 0;
  for (const UpdateOp& op : ops) {
    ++step;
    switch (op.kind) {
      case UpdateOp::Kind::insert:
        engine.insert_edge(op.u, Label::open(op.label), op.v);
        break;
      case UpdateOp::Kind::erase:
        engine.delete_edge(op.u, Label::open(op.label), op.v);
        break;
      case UpdateOp::Kind::query:
        out << (engine.reachable(op.u, op.v) ? "true" : "false") << "\n";
        continue;
      case UpdateOp::Kind::classes:
        out << fingerprint_to_string(engine.fingerprint());
        continue;
      case UpdateOp::Kind::medges:
        out << engine.merged().dump_medges();
        continue;
    }
    if (verify != Verify::none) {
      engine.verify_consistency();
      Fingerprint expected = (verify == Verify::rebuild)
                                 ? rebuild_partition(engine.graph())
                                 : cfl_closure(engine.graph());
      Fingerprint actual = engine.fingerprint();
      if (expected != actual) return Divergence{step, expected, actual};
    }
  }
  return std::nullopt;
}

inline void report_divergence(const Divergence& d, std::ostream& err) {
  err << "divergence at step " << d.step << "\nexpected classes:\n"
      << fingerprint_to_string(d.expected) << "actual classes:\n"
      << fingerprint_to_string(d.actual);
}

// Loads the graph, solves statically, replays the update stream. Exit 0 iff
// no divergence and no errors.
inline int run_session(const SessionConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  auto slurp = [&](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  try {
    InputGraph g = InputGraph::parse(slurp(cfg.graph_path));
    std::vector<UpdateOp> ops;
    if (!cfg.updates_path.empty()) {
      ops = parse_updates(slurp(cfg.updates_path));
    }
    Engine engine(std::move(g), cfg.mode, cfg.strategy);
    if (auto div = replay(engine, ops, cfg.verify, out)) {
      report_divergence(*div, err);
      return 1;
    }
    if (ops.empty()) out << fingerprint_to_string(engine.fingerprint());
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// Fuzzing

struct FuzzReport {
  int trials = 0;
  int failures = 0;
  int first_failure_trial = -1;
  int first_failure_step = -1;
  std::string counterexample_graph;
  std::string counterexample_stream;
};

namespace detail {

inline std::vector<EdgeRef> all_triples(NodeId n, int k) {
  std::vector<EdgeRef> triples;
  for (NodeId u = 0; u < n; ++u) {
    for (int kind = 1; kind <= k; ++kind) {
      for (NodeId v = 0; v < n; ++v) triples.push_back({u, kind, v});
    }
  }
  return triples;
}

}  // namespace detail

// Seeded random graphs (n <= 10, k <= 3) with random update sequences,
// checked after every operation against both the rebuild arbiter and the
// brute-force closure. Deterministic per seed.
inline FuzzReport fuzz_verify(const SessionConfig& cfg, std::ostream& out) {
  FuzzReport report;
  report.trials = cfg.trials;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + trial);
    NodeId n = std::uniform_int_distribution<NodeId>(2, 10)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<EdgeRef> triples = detail::all_triples(n, k);

    InputGraph g(n, k);
    int edge_target = std::uniform_int_distribution<int>(0, 2 * n)(rng);
    for (int i = 0; i < edge_target; ++i) {
      EdgeRef e =
          triples[std::uniform_int_distribution<std::size_t>(0, triples.size() - 1)(rng)];
      if (!g.has_edge(e)) g.add_edge(e.src, Label::open(e.kind), e.dst);
    }
    std::string graph_text = g.serialize();

    Engine engine(g, cfg.mode);
    std::vector<UpdateOp> stream;
    int op_count = std::uniform_int_distribution<int>(0, cfg.max_ops)(rng);
    bool failed = false;
    int fail_step = -1;
    for (int i = 0; i < op_count && !failed; ++i) {
      std::vector<EdgeRef> present(engine.graph().edges().begin(),
                                   engine.graph().edges().end());
      std::vector<EdgeRef> absent;
      for (const EdgeRef& t : triples) {
        if (!engine.graph().has_edge(t)) absent.push_back(t);
      }
      bool do_delete = !present.empty() &&
                       (absent.empty() ||
                        std::uniform_int_distribution<int>(0, 1)(rng) == 0);
      UpdateOp op{};
      if (do_delete) {
        EdgeRef e = present[std::uniform_int_distribution<std::size_t>(
            0, present.size() - 1)(rng)];
        op = {UpdateOp::Kind::erase, e.src, e.kind, e.dst};
        engine.delete_edge(e.src, Label::open(e.kind), e.dst);
      } else if (!absent.empty()) {
        EdgeRef e = absent[std::uniform_int_distribution<std::size_t>(
            0, absent.size() - 1)(rng)];
        op = {UpdateOp::Kind::insert, e.src, e.kind, e.dst};
        engine.insert_edge(e.src, Label::open(e.kind), e.dst);
      } else {
        continue;
      }
      stream.push_back(op);
      Fingerprint actual = engine.fingerprint();
      if (actual != rebuild_partition(engine.graph()) ||
          actual != cfl_closure(engine.graph())) {
        failed = true;
        fail_step = static_cast<int>(stream.size());
      }
    }
    if (failed) {
      ++report.failures;
      if (report.first_failure_trial < 0) {
        report.first_failure_trial = trial;
        report.first_failure_step = fail_step;
        report.counterexample_graph = graph_text;
        std::ostringstream ss;
        for (const UpdateOp& op : stream) ss << op.to_line() << "\n";
        report.counterexample_stream = ss.str();
      }
    }
  }

  out << "trials=" << report.trials << " failures=" << report.failures << "\n";
  if (report.failures > 0) {
    out << "first counterexample: trial " << report.first_failure_trial
        << ", divergent at step " << report.first_failure_step << "\n"
        << "--- graph ---\n"
        << report.counterexample_graph << "--- updates ---\n"
        << report.counterexample_stream;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Benchmark harness

struct BenchRow {
  std::string family;
  int n = 0;
  int op_count = 0;
  double total_ms = 0;
  double per_op_us = 0;
};

struct BenchCase {
  InputGraph graph;
  std::vector<EdgeRef> deletions;
};

// Chain v0 -> v1 -> ... -> v(n-1); no merges, deletions walk from the head.
inline BenchCase bench_chain(int n) {
  InputGraph g(n, 1);
  BenchCase c{g, {}};
  for (NodeId i = 0; i + 1 < n; ++i) {
    c.graph.add_edge(i, Label::open(1), i + 1);
    c.deletions.push_back({i, 1, i + 1});
  }
  return c;
}

// One hub class of ~n/2 members (merged through a shared anchor) with ~n/2
// outgoing merged edges, each folding ~n/2 originals. Deleting anchor edges
// repeatedly exercises the quadratic repartition cost.
inline BenchCase bench_adversarial(int n, int ops) {
  int m = std::max(1, (n - 1) / 2);
  NodeId total = static_cast<NodeId>(2 * m + 1);
  InputGraph g(total, 2);
  BenchCase c{g, {}};
  for (int h = 1; h <= m; ++h) {
    c.graph.add_edge(h, Label::open(1), 0);
    for (int t = m + 1; t <= 2 * m; ++t) {
      c.graph.add_edge(h, Label::open(2), static_cast<NodeId>(t));
    }
  }
  for (int h = 1; h <= std::min(m, ops); ++h) c.deletions.push_back({h, 1, 0});
  return c;
}

inline BenchCase bench_random(int n, std::uint64_t seed, int ops) {
  std::mt19937_64 rng(seed);
  InputGraph g(n, 3);
  BenchCase c{g, {}};
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_int_distribution<int> kind(1, 3);
  for (int i = 0; i < 2 * n; ++i) {
    EdgeRef e{node(rng), kind(rng), node(rng)};
    if (!c.graph.has_edge(e)) c.graph.add_edge(e.src, Label::open(e.kind), e.dst);
  }
  std::vector<EdgeRef> present(c.graph.edges().begin(), c.graph.edges().end());
  std::shuffle(present.begin(), present.end(), rng);
  present.resize(std::min<std::size_t>(present.size(), ops));
  c.deletions = present;
  return c;
}

inline BenchRow bench_run(const std::string& family, int n, BenchCase c,
                          Strategy strategy) {
  Engine engine(std::move(c.graph), CycleHandling::on, strategy);
  auto start = std::chrono::steady_clock::now();
  for (const EdgeRef& e : c.deletions) {
    engine.delete_edge(e.src, Label::open(e.kind), e.dst);
  }
  auto stop = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(stop - start).count();
  int ops = static_cast<int>(c.deletions.size());
  return {family, n, ops, ms, ops ? ms * 1000.0 / ops : 0.0};
}

// Least-squares slope of log(per-op time) against log(n).
inline double fit_exponent(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const BenchRow& r : rows) {
    if (r.per_op_us <= 0) continue;
    double x = std::log(static_cast<double>(r.n));
    double y = std::log(r.per_op_us);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

inline std::vector<BenchRow> bench_series(const std::string& family, int min_n,
                                          int max_n, Strategy strategy,
                                          std::uint64_t seed, int ops = 8) {
  std::vector<BenchRow> rows;
  for (int n = min_n; n <= max_n; n *= 2) {
    BenchCase c;
    if (family == "chain") {
      c = bench_chain(n);
    } else if (family == "adversarial") {
      c = bench_adversarial(n, ops);
    } else if (family == "random") {
      c = bench_random(n, seed + n, std::max(ops, 64));
    } else {
      throw Error("unknown bench family '" + family + "'");
    }
    rows.push_back(bench_run(family, n, std::move(c), strategy));
  }
  return rows;
}

inline void write_bench_csv(const std::vector<BenchRow>& rows, double exponent,
                            std::ostream& out, bool header = true) {
  if (header) out << "family,n,op_count,total_ms,per_op_us,fit_exponent\n";
  for (const BenchRow& r : rows) {
    out << r.family << "," << r.n << "," << r.op_count << "," << std::fixed
        << std::setprecision(3) << r.total_ms << "," << r.per_op_us << ",";
    if (std::isnan(exponent)) {
      out << "na";
    } else {
      out << std::setprecision(3) << exponent;
    }
    out << "\n";
    out.unsetf(std::ios::fixed);
  }
}

// Times the deletion workload for both strategies; one CSV series per
// (family, strategy) pair.
inline int bench(const SessionConfig& cfg, std::ostream& out) {
  bool header = true;
  for (Strategy strategy : {Strategy::dynamic_update, Strategy::rebuild}) {
    std::string name =
        cfg.family + (strategy == Strategy::dynamic_update ? "-dynamic" : "-rebuild");
    std::vector<BenchRow> rows =
        bench_series(cfg.family, cfg.min_n, cfg.max_n, strategy, cfg.seed);
    for (BenchRow& r : rows) r.family = name;
    write_bench_csv(rows, fit_exponent(rows), out, header);
    header = false;
  }
  return 0;
}

}  // namespace dyckreach
