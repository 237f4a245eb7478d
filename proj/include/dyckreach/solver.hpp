#pragma once

#include <deque>
#include <vector>

#include "dyckreach/disjoint_sets.hpp"
#include "dyckreach/input_graph.hpp"
#include "dyckreach/merged_graph.hpp"

namespace dyckreach {

// Common-anchor fixpoint: whenever a (dst, kind) group has two or more
// source representatives, merge the sources. Merging re-enqueues the winner's
// incoming groups and the groups of its outgoing targets; FIFO order is
// semantically irrelevant (confluence).
inline void restore_fixpoint(MergedGraph& gm, std::deque<Group> work) {
  while (!work.empty()) {
    Group grp = work.front();
    work.pop_front();
    grp.dst = gm.find(grp.dst);
    std::vector<NodeId> srcs = gm.group_sources(grp);
    while (srcs.size() >= 2) {
      auto [winner, changed] = gm.merge_reps(srcs[0], srcs[1]);
      for (const Group& c : changed) work.push_back(c);
      grp.dst = gm.find(grp.dst);
      srcs = gm.group_sources(grp);
    }
  }
}

// Every (dst, kind) group currently present in gm.
inline std::deque<Group> all_groups(const MergedGraph& gm) {
  std::deque<Group> groups;
  for (const MergedEdge& e : gm.edges()) groups.push_back({e.dst, e.kind});
  return groups;
}

// Opt-Dyck': the static solve. Starts from the identity quotient and runs
// the anchor fixpoint to quiescence. The result is the coarsest merged graph
// (the bidirected Dyck-reachability equivalence), deterministic up to
// representative naming.
inline MergedGraph opt_dyck(const InputGraph& g) {
  MergedGraph gm = MergedGraph::quotient(g, DisjointSets(g.node_count()));
  restore_fixpoint(gm, all_groups(gm));
  return gm;
}

// Asserts the fixpoint condition: at most one source representative per
// (target, kind) group.
inline bool at_fixpoint(const MergedGraph& gm) {
  for (const MergedEdge& e : gm.edges()) {
    if (gm.group_sources({e.dst, e.kind}).size() > 1) return false;
  }
  return true;
}

}  // namespace dyckreach
