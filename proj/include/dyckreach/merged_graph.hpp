#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dyckreach/disjoint_sets.hpp"
#include "dyckreach/input_graph.hpp"

namespace dyckreach {

using Weight = std::int64_t;

// One quotient-graph edge; weight counts the original edges it folds.
struct MergedEdge {
  NodeId src = 0;
  int kind = 1;
  NodeId dst = 0;
  Weight weight = 0;

  auto operator<=>(const MergedEdge&) const = default;
};

// A (target representative, label kind) pair: the unit of work for the
// common-anchor fixpoint. All same-kind edges into dst form one group.
struct Group {
  NodeId dst = 0;
  int kind = 1;

  auto operator<=>(const Group&) const = default;
};

// The weighted quotient graph G_m over a DisjointSets partition. At most one
// edge per (src, kind, dst) triple; parallel originals fold into the weight.
class MergedGraph {
 public:
  using Key = std::tuple<NodeId, int, NodeId>;

  MergedGraph() = default;

  explicit MergedGraph(DisjointSets partition)
      : parts_(std::move(partition)),
        out_(parts_.node_count()),
        in_(parts_.node_count()) {}

  // Exact quotient of g by ds: weights satisfy the recount rule by
  // construction. Doubles as the weight-consistency checker.
  static MergedGraph quotient(const InputGraph& g, DisjointSets ds) {
    MergedGraph gm(std::move(ds));
    for (const EdgeRef& e : g.edges()) {
      gm.adjust_weight(gm.find(e.src), e.kind, gm.find(e.dst), +1);
    }
    return gm;
  }

  const DisjointSets& partition() const { return parts_; }
  NodeId find(NodeId x) const { return parts_.find(x); }
  NodeId unite(NodeId a, NodeId b) { return parts_.unite(a, b); }

  Weight weight(NodeId src, int kind, NodeId dst) const {
    auto it = weight_.find({src, kind, dst});
    return it == weight_.end() ? 0 : it->second;
  }

  std::size_t edge_triple_count() const { return weight_.size(); }

  Weight total_weight() const {
    Weight sum = 0;
    for (const auto& [key, w] : weight_) sum += w;
    return sum;
  }

  // Outgoing (kind, dst) pairs of a node; incoming (kind, src) pairs.
  const std::set<std::pair<int, NodeId>>& out_of(NodeId r) const { return out_[r]; }
  const std::set<std::pair<int, NodeId>>& in_of(NodeId r) const { return in_[r]; }

  // Source representatives of the (dst, kind) group.
  std::vector<NodeId> group_sources(const Group& grp) const {
    std::vector<NodeId> srcs;
    const auto& in = in_[grp.dst];
    for (auto it = in.lower_bound({grp.kind, 0});
         it != in.end() && it->first == grp.kind; ++it) {
      srcs.push_back(it->second);
    }
    return srcs;
  }

  // Weight += delta. Creates the edge on +1 from absent, drops it at 0.
  // Returns the resulting weight (0 means removed).
  Weight adjust_weight(NodeId src, int kind, NodeId dst, int delta) {
    Key key{src, kind, dst};
    auto it = weight_.find(key);
    if (it == weight_.end()) {
      if (delta < 0) {
        throw MissingEdge("no merged edge " + std::to_string(src) + " -(" +
                          std::to_string(kind) + "-> " + std::to_string(dst));
      }
      weight_.emplace(key, delta);
      out_[src].insert({kind, dst});
      in_[dst].insert({kind, src});
      return delta;
    }
    it->second += delta;
    Weight w = it->second;
    if (w == 0) {
      weight_.erase(it);
      out_[src].erase({kind, dst});
      in_[dst].erase({kind, src});
    }
    return w;
  }

  // Merge the classes of r1 and r2. The loser's adjacency is re-pointed to
  // the winner; parallel edges fold by summing weights. Returns the surviving
  // representative and the groups whose source sets may have changed.
  std::pair<NodeId, std::vector<Group>> merge_reps(NodeId r1, NodeId r2) {
    require_rep(r1);
    require_rep(r2);
    if (r1 == r2) {
      throw SameRepresentative("merge_reps(" + std::to_string(r1) + ", same)");
    }
    NodeId winner = parts_.unite(r1, r2);
    NodeId loser = (winner == r1) ? r2 : r1;

    std::vector<std::pair<Key, Weight>> moved;
    for (auto [k, d] : out_[loser]) moved.push_back({{loser, k, d}, 0});
    for (auto [k, s] : in_[loser]) {
      if (s != loser) moved.push_back({{s, k, loser}, 0});
    }
    for (auto& [key, w] : moved) {
      auto it = weight_.find(key);
      w = it->second;
      weight_.erase(it);
      auto [s, k, d] = key;
      out_[s].erase({k, d});
      in_[d].erase({k, s});
    }
    for (auto& [key, w] : moved) {
      auto [s, k, d] = key;
      if (s == loser) s = winner;
      if (d == loser) d = winner;
      weight_[{s, k, d}] += w;
      out_[s].insert({k, d});
      in_[d].insert({k, s});
    }

    std::vector<Group> changed;
    for (auto [k, d] : out_[winner]) changed.push_back({d, k});
    for (auto [k, s] : in_[winner]) changed.push_back({winner, k});
    std::sort(changed.begin(), changed.end());
    changed.erase(std::unique(changed.begin(), changed.end()), changed.end());
    return {winner, changed};
  }

  // Replace the class of r by the given sub-classes (a partition of its
  // members). Incident merged edges are recounted from g. Returns the new
  // representatives and every (dst, kind) group touched by the recount.
  std::pair<std::vector<NodeId>, std::vector<Group>> replace_class(
      NodeId r, const std::vector<std::vector<NodeId>>& pieces,
      const InputGraph& g) {
    require_rep(r);
    std::vector<NodeId> old_members = parts_.members(r);

    // Drop every merged edge incident to r.
    std::vector<Key> stale;
    for (auto [k, d] : out_[r]) stale.push_back({r, k, d});
    for (auto [k, s] : in_[r]) {
      if (s != r) stale.push_back({s, k, r});
    }
    for (const Key& key : stale) {
      auto [s, k, d] = key;
      weight_.erase(key);
      out_[s].erase({k, d});
      in_[d].erase({k, s});
    }

    // Rebuild the partition, preserving all other classes and their reps.
    std::vector<std::pair<NodeId, std::vector<NodeId>>> classes;
    for (NodeId rep : parts_.representatives()) {
      if (rep != r) classes.push_back({rep, parts_.members(rep)});
    }
    std::vector<NodeId> new_reps;
    for (const auto& piece : pieces) {
      NodeId rep = *std::min_element(piece.begin(), piece.end());
      new_reps.push_back(rep);
      classes.push_back({rep, piece});
    }
    parts_ = DisjointSets::from_classes(parts_.node_count(), classes);

    // Recount original edges incident to the former class.
    std::unordered_set<NodeId> in_class(old_members.begin(), old_members.end());
    std::vector<Group> touched;
    for (NodeId m : old_members) {
      for (const EdgeRef& e : g.out_edges(m)) {
        NodeId d = parts_.find(e.dst);
        adjust_weight(parts_.find(m), e.kind, d, +1);
        touched.push_back({d, e.kind});
      }
      for (const EdgeRef& e : g.in_edges(m)) {
        if (in_class.contains(e.src)) continue;  // counted by its out loop
        NodeId d = parts_.find(m);
        adjust_weight(parts_.find(e.src), e.kind, d, +1);
        touched.push_back({d, e.kind});
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    return {new_reps, touched};
  }

  // Explode the class of r into singletons, recounting incident edges.
  std::vector<NodeId> split_rep(NodeId r, const InputGraph& g) {
    require_rep(r);
    std::vector<std::vector<NodeId>> singletons;
    for (NodeId m : parts_.members(r)) singletons.push_back({m});
    return replace_class(r, singletons, g).first;
  }

  std::vector<MergedEdge> edges() const {
    std::vector<MergedEdge> result;
    result.reserve(weight_.size());
    for (const auto& [key, w] : weight_) {
      auto [s, k, d] = key;
      result.push_back({s, k, d, w});
    }
    return result;
  }

  // "medge <src> <kind> <dst> <weight>" lines, reps named by smallest member.
  std::string dump_medges() const {
    std::vector<MergedEdge> named;
    for (const auto& [key, w] : weight_) {
      auto [s, k, d] = key;
      named.push_back({parts_.class_name(s), k, parts_.class_name(d), w});
    }
    std::sort(named.begin(), named.end());
    std::ostringstream out;
    for (const MergedEdge& e : named) {
      out << "medge " << e.src << " " << e.kind << " " << e.dst << " "
          << e.weight << "\n";
    }
    return out.str();
  }

  bool same_edges(const MergedGraph& other) const {
    return weight_ == other.weight_;
  }

 private:
  void require_rep(NodeId r) const {
    if (!parts_.is_rep(r)) {
      throw NotARepresentative(std::to_string(r) + " is not a representative");
    }
  }

  DisjointSets parts_;
  std::map<Key, Weight> weight_;
  std::vector<std::set<std::pair<int, NodeId>>> out_;  // src -> {(kind, dst)}
  std::vector<std::set<std::pair<int, NodeId>>> in_;   // dst -> {(kind, src)}
};

}  // namespace dyckreach
