#pragma once

#include <vector>

#include "dyckreach/disjoint_sets.hpp"
#include "dyckreach/input_graph.hpp"
#include "dyckreach/solver.hpp"

namespace dyckreach {

inline constexpr NodeId kOracleNodeBound = 64;

// Dense reachability relation used by the brute-force closure.
struct ReachMatrix {
  explicit ReachMatrix(NodeId n) : n(n), bits(std::size_t(n) * n, false) {}

  bool get(NodeId a, NodeId b) const { return bits[std::size_t(a) * n + b]; }
  // Returns true if the entry was newly set.
  bool set(NodeId a, NodeId b) {
    auto ref = bits.begin() + std::size_t(a) * n + b;
    if (*ref) return false;
    *ref = true;
    return true;
  }

  bool reflexive() const {
    for (NodeId x = 0; x < n; ++x) {
      if (!get(x, x)) return false;
    }
    return true;
  }
  bool symmetric() const {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (get(a, b) != get(b, a)) return false;
      }
    }
    return true;
  }
  bool transitive() const {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (!get(a, b)) continue;
        for (NodeId c = 0; c < n; ++c) {
          if (get(b, c) && !get(a, c)) return false;
        }
      }
    }
    return true;
  }

  NodeId n;
  std::vector<bool> bits;
};

// Brute-force Dyck closure over the doubled edge set, for the grammar
// D -> eps | D D | (_i D )_i. Close edges are derived from canonical opens:
// x -(i-> y, D(y, z), w -(i-> z  implies  D(x, w).
inline ReachMatrix cfl_reach_matrix(const InputGraph& g,
                                    NodeId bound = kOracleNodeBound) {
  const NodeId n = g.node_count();
  if (n > bound) {
    throw GraphTooLarge("oracle bound is " + std::to_string(bound) +
                        " nodes, got " + std::to_string(n));
  }
  ReachMatrix d(n);
  for (NodeId x = 0; x < n; ++x) d.set(x, x);

  std::vector<EdgeRef> edges(g.edges().begin(), g.edges().end());
  bool changed = true;
  while (changed) {
    changed = false;
    // D -> D D
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        if (!d.get(a, b)) continue;
        for (NodeId c = 0; c < n; ++c) {
          if (d.get(b, c) && d.set(a, c)) changed = true;
        }
      }
    }
    // D -> (_i D )_i
    for (const EdgeRef& open : edges) {
      for (const EdgeRef& close : edges) {
        if (open.kind != close.kind) continue;
        if (d.get(open.dst, close.dst) && d.set(open.src, close.src)) {
          changed = true;
        }
      }
    }
  }
  return d;
}

// Partition induced by the brute-force D relation. Asserts (not assumes) that
// the relation is an equivalence on bidirected inputs.
inline Fingerprint cfl_closure(const InputGraph& g,
                               NodeId bound = kOracleNodeBound) {
  ReachMatrix d = cfl_reach_matrix(g, bound);
  if (!d.reflexive()) throw Error("oracle relation not reflexive");
  if (!d.symmetric()) throw Error("oracle relation not symmetric");
  if (!d.transitive()) throw Error("oracle relation not transitive");
  DisjointSets ds(d.n);
  for (NodeId a = 0; a < d.n; ++a) {
    for (NodeId b = a + 1; b < d.n; ++b) {
      if (d.get(a, b)) ds.unite(a, b);
    }
  }
  return ds.fingerprint();
}

// Scratch-rebuild arbiter: the static solve from a clean slate.
inline Fingerprint rebuild_partition(const InputGraph& g) {
  return opt_dyck(g).partition().fingerprint();
}

}  // namespace dyckreach
