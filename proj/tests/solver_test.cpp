#include <algorithm>
#include <random>

#include "doctest.h"
#include "dyckreach/oracle.hpp"
#include "dyckreach/solver.hpp"
#include "fixtures.hpp"

using namespace dyckreach;
using namespace fixtures;

namespace {

std::vector<MergedEdge> sorted_edges(const MergedGraph& gm) {
  std::vector<MergedEdge> e = gm.edges();
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("opt_dyck: anchor triangle merges the two sources") {
  MergedGraph gm = opt_dyck(anchor_triangle());
  CHECK(gm.partition().fingerprint() == Fingerprint{{0, 1}, {2}});
  CHECK(sorted_edges(gm) == std::vector<MergedEdge>{{0, 1, 2, 2}});
}

TEST_CASE("opt_dyck: cyclic example reaches the four-class fixpoint") {
  MergedGraph gm = opt_dyck(cyclic_merged());
  CHECK(gm.partition().fingerprint() ==
        Fingerprint{{0, 1}, {2}, {3, 5}, {4, 6}});
  CHECK(sorted_edges(gm) == std::vector<MergedEdge>{
                                {0, 1, 2, 2}, {0, 1, 3, 2}, {3, 1, 4, 2}, {4, 1, 0, 2}});
  CHECK(at_fixpoint(gm));
}

TEST_CASE("opt_dyck: post-deletion graph stays fully split") {
  MergedGraph gm = opt_dyck(cyclic_merged_after_deletion());
  CHECK(gm.partition().fingerprint() ==
        Fingerprint{{0}, {1}, {2}, {3}, {4}, {5}, {6}});
  CHECK(gm.edge_triple_count() == 7);
  for (const MergedEdge& e : gm.edges()) CHECK(e.weight == 1);
}

TEST_CASE("a single edge never merges anything") {
  InputGraph g(2);
  g.add_edge(0, Label::open(1), 1);
  CHECK(opt_dyck(g).partition().fingerprint() == Fingerprint{{0}, {1}});
}

TEST_CASE("a common source does not merge its targets") {
  // u -(1-> x and u -(1-> y: ")_i D (_i" is not a Dyck factorization.
  InputGraph g(3);
  g.add_edge(0, Label::open(1), 1);
  g.add_edge(0, Label::open(1), 2);
  CHECK(opt_dyck(g).partition().fingerprint() == Fingerprint{{0}, {1}, {2}});
}

TEST_CASE("restore_fixpoint is idempotent on a solved graph") {
  MergedGraph gm = opt_dyck(cyclic_merged());
  Fingerprint before = gm.partition().fingerprint();
  auto edges_before = sorted_edges(gm);
  restore_fixpoint(gm, all_groups(gm));
  CHECK(gm.partition().fingerprint() == before);
  CHECK(sorted_edges(gm) == edges_before);
}

TEST_CASE("restore_fixpoint re-merges after a full split") {
  // cyclic_merged() minus x1 -(1-> x2; the expected classes come from the
  // brute-force closure (x1 keeps no outgoing open edge, so it stays alone).
  InputGraph g = cyclic_merged();
  g.remove_edge(X1, Label::open(1), X2);

  MergedGraph gm = opt_dyck(cyclic_merged());
  gm.adjust_weight(gm.find(X1), 1, gm.find(X2), -1);
  std::deque<Group> seeds;
  for (NodeId r : {gm.find(U), gm.find(X1), gm.find(X2)}) {
    for (NodeId nr : gm.split_rep(r, g)) {
      for (auto [kind, dst] : gm.out_of(nr)) seeds.push_back({dst, kind});
      for (auto [kind, src] : gm.in_of(nr)) seeds.push_back({nr, kind});
    }
  }
  restore_fixpoint(gm, seeds);

  Fingerprint expected{{0, 1}, {2}, {3}, {4, 6}, {5}};
  CHECK(cfl_closure(g) == expected);
  CHECK(gm.partition().fingerprint() == expected);
  CHECK(sorted_edges(gm) == std::vector<MergedEdge>{{0, 1, 2, 2},
                                                    {0, 1, 3, 1},
                                                    {0, 1, 5, 1},
                                                    {4, 1, 0, 2},
                                                    {5, 1, 4, 1}});
}

TEST_CASE("fixpoint holds on random graphs") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    MergedGraph gm = opt_dyck(random_graph(rng));
    CHECK(at_fixpoint(gm));
  }
}

TEST_CASE("confluence: seed order does not change the result") {
  std::mt19937_64 rng(29);
  for (const InputGraph& g : {anchor_triangle(), cyclic_merged()}) {
    Fingerprint reference = opt_dyck(g).partition().fingerprint();
    for (int trial = 0; trial < 20; ++trial) {
      MergedGraph gm = MergedGraph::quotient(g, DisjointSets(g.node_count()));
      std::deque<Group> seeds = all_groups(gm);
      std::shuffle(seeds.begin(), seeds.end(), rng);
      restore_fixpoint(gm, seeds);
      CHECK(gm.partition().fingerprint() == reference);
    }
  }
}
