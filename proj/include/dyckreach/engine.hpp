#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyckreach/input_graph.hpp"
#include "dyckreach/merged_graph.hpp"
#include "dyckreach/solver.hpp"

namespace dyckreach {

enum class CycleHandling { on, off };
enum class Strategy { dynamic_update, rebuild };

namespace detail {

// Iterative Tarjan over an adjacency map restricted to its own keys.
// Returns the nodes lying in a nontrivial SCC (size >= 2 or self-loop).
inline std::vector<NodeId> nontrivial_scc_nodes(
    const std::map<NodeId, std::vector<NodeId>>& adj) {
  std::unordered_map<NodeId, int> index, lowlink;
  std::unordered_map<NodeId, bool> on_stack;
  std::vector<NodeId> stack;
  std::vector<NodeId> result;
  int next_index = 0;

  struct Frame {
    NodeId v;
    std::size_t child = 0;
  };

  for (const auto& [start, ignored] : adj) {
    if (index.contains(start)) continue;
    std::vector<Frame> frames{{start}};
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = adj.at(f.v);
      if (f.child < succ.size()) {
        NodeId w = succ[f.child++];
        if (!index.contains(w)) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<NodeId> component;
          NodeId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
          } while (w != f.v);
          bool self_loop =
              std::find(succ.begin(), succ.end(), f.v) != succ.end();
          if (component.size() >= 2 || self_loop) {
            result.insert(result.end(), component.begin(), component.end());
          }
        }
        NodeId v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          lowlink[frames.back().v] =
              std::min(lowlink[frames.back().v], lowlink[v]);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace detail

// Step (i) of the extended deletion: walk incoming edges backward from r and
// collect every representative in that region lying on a cycle (set N_c).
inline std::vector<NodeId> track_cycles(const MergedGraph& gm, NodeId r) {
  if (!gm.partition().is_rep(r)) {
    throw NotARepresentative(std::to_string(r) + " is not a representative");
  }
  std::map<NodeId, std::vector<NodeId>> region;  // rep -> predecessors in region
  std::deque<NodeId> work{r};
  region[r];
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    for (auto [kind, src] : gm.in_of(v)) {
      if (!region.contains(src)) {
        region[src];
        work.push_back(src);
      }
      region[v].push_back(src);
    }
  }
  for (auto& [v, preds] : region) {
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
  return detail::nontrivial_scc_nodes(region);
}

// The dynamic engine: input graph G plus its weighted merged graph G_m, kept
// at the anchor fixpoint across insertions and deletions. CycleHandling::off
// skips the cycle-tracking step of deletion (the known-unsound behavior, for
// demonstration); Strategy::rebuild re-solves from scratch after each update.
class Engine {
 public:
  explicit Engine(InputGraph g, CycleHandling cycles = CycleHandling::on,
                  Strategy strategy = Strategy::dynamic_update)
      : g_(std::move(g)),
        gm_(opt_dyck(g_)),
        cycles_(cycles),
        strategy_(strategy) {}

  const InputGraph& graph() const { return g_; }
  const MergedGraph& merged() const { return gm_; }
  CycleHandling cycle_handling() const { return cycles_; }

  bool reachable(NodeId a, NodeId b) const {
    return gm_.find(a) == gm_.find(b);
  }

  Fingerprint fingerprint() const { return gm_.partition().fingerprint(); }

  void insert_edge(NodeId u, Label label, NodeId v) {
    EdgeRef e = InputGraph::canonical(u, label, v);
    g_.add_edge(u, label, v);
    if (strategy_ == Strategy::rebuild) {
      gm_ = opt_dyck(g_);
      return;
    }
    NodeId rv = gm_.find(e.dst);
    gm_.adjust_weight(gm_.find(e.src), e.kind, rv, +1);
    restore_fixpoint(gm_, {{rv, e.kind}});
  }

  void delete_edge(NodeId u, Label label, NodeId v) {
    EdgeRef e = InputGraph::canonical(u, label, v);
    g_.remove_edge(u, label, v);
    if (strategy_ == Strategy::rebuild) {
      gm_ = opt_dyck(g_);
      return;
    }
    NodeId ru = gm_.find(e.src);
    gm_.adjust_weight(ru, e.kind, gm_.find(e.dst), -1);

    // Step (i): fully split every cyclic class backward-reachable from the
    // deletion point. Step (ii): cascade the witness repartition from the
    // deletion class and from the predecessors of the split classes, then
    // re-merge. The cascade also covers acyclic classes upstream of a split
    // cycle, which lose anchors without lying on one themselves.
    std::deque<NodeId> cascade{ru};
    std::deque<Group> seeds;
    if (cycles_ == CycleHandling::on) {
      std::vector<NodeId> cyclic = track_cycles(gm_, ru);
      for (NodeId n : cyclic) {
        for (auto [kind, src] : gm_.in_of(n)) {
          if (src != n) cascade.push_back(src);
        }
      }
      for (NodeId n : cyclic) {
        auto [reps, touched] = gm_.replace_class(n, singletons_of(n), g_);
        seeds.insert(seeds.end(), touched.begin(), touched.end());
      }
    }
    witness_cascade(std::move(cascade), std::move(seeds));
  }

  // Recount and fixpoint checks; throws Error on any drift.
  void verify_consistency() const {
    MergedGraph recount = MergedGraph::quotient(g_, gm_.partition());
    if (!gm_.same_edges(recount)) {
      throw Error("merged graph weights diverge from quotient recount");
    }
    if (gm_.total_weight() != static_cast<Weight>(g_.edge_count())) {
      throw Error("total merged weight != input edge count");
    }
    if (!at_fixpoint(gm_)) throw Error("merged graph not at anchor fixpoint");
  }

 private:
  std::vector<std::vector<NodeId>> singletons_of(NodeId rep) const {
    std::vector<std::vector<NodeId>> pieces;
    for (NodeId m : gm_.partition().members(rep)) pieces.push_back({m});
    return pieces;
  }

  // DynamicDeletion cascade: repartition each queued class by witness
  // connectivity (members sharing a (kind, anchor-class) pair stay together),
  // enqueue a class's predecessors whenever it splits, then restore the
  // fixpoint over all touched groups.
  void witness_cascade(std::deque<NodeId> work, std::deque<Group> seeds) {
    while (!work.empty()) {
      NodeId p = gm_.find(work.front());
      work.pop_front();
      const std::vector<NodeId>& members = gm_.partition().members(p);
      if (members.size() <= 1) continue;

      // Witness components via a local union-find keyed by (kind, anchor).
      std::unordered_map<NodeId, std::size_t> slot;
      for (std::size_t i = 0; i < members.size(); ++i) slot[members[i]] = i;
      std::vector<std::size_t> local(members.size());
      for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
      auto root = [&](std::size_t x) {
        while (local[x] != x) x = local[x] = local[local[x]];
        return x;
      };
      std::map<std::pair<int, NodeId>, std::size_t> witness_owner;
      for (NodeId m : members) {
        for (const EdgeRef& e : g_.out_edges(m)) {
          auto [it, fresh] =
              witness_owner.try_emplace({e.kind, gm_.find(e.dst)}, slot[m]);
          if (!fresh) local[root(slot[m])] = root(it->second);
        }
      }
      std::map<std::size_t, std::vector<NodeId>> by_root;
      for (NodeId m : members) by_root[root(slot[m])].push_back(m);
      if (by_root.size() <= 1) continue;

      std::vector<NodeId> preds;
      for (auto [kind, src] : gm_.in_of(p)) {
        if (src != p) preds.push_back(src);
      }
      std::vector<std::vector<NodeId>> pieces;
      for (auto& [ignored, piece] : by_root) pieces.push_back(std::move(piece));
      auto [reps, touched] = gm_.replace_class(p, pieces, g_);
      seeds.insert(seeds.end(), touched.begin(), touched.end());
      for (NodeId s : preds) work.push_back(s);
    }
    restore_fixpoint(gm_, std::move(seeds));
  }

  InputGraph g_;
  MergedGraph gm_;
  CycleHandling cycles_;
  Strategy strategy_;
};

}  // namespace dyckreach
