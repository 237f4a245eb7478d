#pragma once

#include <random>

#include "dyckreach/input_graph.hpp"

namespace fixtures {

using dyckreach::InputGraph;
using dyckreach::Label;
using dyckreach::NodeId;

// Three-node graph: u and v share the anchor w.
inline constexpr NodeId U = 0, V = 1, W = 2, X1 = 3, X2 = 4, Y1 = 5, Y2 = 6;

inline InputGraph anchor_triangle() {
  InputGraph g(3);
  g.add_edge(U, Label::open(1), W);
  g.add_edge(V, Label::open(1), W);
  return g;
}

// Seven-node graph whose merged form contains the cycle uv -> x1y1 -> x2y2 -> uv.
inline InputGraph cyclic_merged() {
  InputGraph g(7);
  g.add_edge(U, Label::open(1), W);
  g.add_edge(V, Label::open(1), W);
  g.add_edge(V, Label::open(1), Y1);
  g.add_edge(Y1, Label::open(1), Y2);
  g.add_edge(Y2, Label::open(1), V);
  g.add_edge(U, Label::open(1), X1);
  g.add_edge(X1, Label::open(1), X2);
  g.add_edge(X2, Label::open(1), U);
  return g;
}

// cyclic_merged() after removing v -(1-> w: every class collapses back to a
// singleton.
inline InputGraph cyclic_merged_after_deletion() {
  InputGraph g = cyclic_merged();
  g.remove_edge(V, Label::open(1), W);
  return g;
}

inline InputGraph random_graph(std::mt19937_64& rng, NodeId max_nodes = 10,
                               int max_kinds = 3) {
  NodeId n = std::uniform_int_distribution<NodeId>(2, max_nodes)(rng);
  int k = std::uniform_int_distribution<int>(1, max_kinds)(rng);
  InputGraph g(n, k);
  int edge_target = std::uniform_int_distribution<int>(0, 2 * n)(rng);
  std::uniform_int_distribution<NodeId> node(0, n - 1);
  std::uniform_int_distribution<int> kind(1, k);
  for (int i = 0; i < edge_target; ++i) {
    dyckreach::EdgeRef e{node(rng), kind(rng), node(rng)};
    if (!g.has_edge(e)) g.add_edge(e.src, Label::open(e.kind), e.dst);
  }
  return g;
}

}  // namespace fixtures
