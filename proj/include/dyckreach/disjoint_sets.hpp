#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dyckreach/errors.hpp"
#include "dyckreach/input_graph.hpp"

namespace dyckreach {

// Canonical partition form: sorted member lists, sorted by smallest member.
// Equal fingerprints iff equal partitions, independent of representative ids.
using Fingerprint = std::vector<std::vector<NodeId>>;

inline std::string fingerprint_to_string(const Fingerprint& fp) {
  std::ostringstream out;
  for (const auto& cls : fp) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) out << ' ';
      out << cls[i];
    }
    out << '\n';
  }
  return out.str();
}

// Union-find over 0..n-1 with per-root member lists (resp_node plus class
// enumeration). Union by size; ties keep the smaller root id.
class DisjointSets {
 public:
  DisjointSets() = default;

  explicit DisjointSets(NodeId n) : parent_(n), members_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (NodeId x = 0; x < n; ++x) members_[x] = {x};
  }

  // Rebuild from explicit classes with designated representatives. Every node
  // in 0..n-1 must appear in exactly one class containing its representative.
  static DisjointSets from_classes(
      NodeId n, const std::vector<std::pair<NodeId, std::vector<NodeId>>>& classes) {
    DisjointSets ds;
    ds.parent_.assign(n, -1);
    ds.members_.assign(n, {});
    for (const auto& [rep, members] : classes) {
      for (NodeId m : members) ds.parent_[m] = rep;
      ds.members_[rep] = members;
    }
    for (NodeId x = 0; x < n; ++x) {
      if (ds.parent_[x] < 0) throw Error("from_classes: node not covered");
    }
    return ds;
  }

  NodeId node_count() const { return static_cast<NodeId>(parent_.size()); }

  NodeId find(NodeId x) const {
    check_node(x);
    NodeId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  bool is_rep(NodeId x) const {
    check_node(x);
    return parent_[x] == x;
  }

  NodeId unite(NodeId a, NodeId b) {
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra == rb) return ra;
    if (members_[ra].size() < members_[rb].size() ||
        (members_[ra].size() == members_[rb].size() && rb < ra)) {
      std::swap(ra, rb);
    }
    parent_[rb] = ra;
    auto& win = members_[ra];
    auto& lose = members_[rb];
    win.insert(win.end(), lose.begin(), lose.end());
    lose.clear();
    lose.shrink_to_fit();
    return ra;
  }

  const std::vector<NodeId>& members(NodeId r) const {
    check_node(r);
    if (parent_[r] != r) {
      throw NotARepresentative(std::to_string(r) + " is not a representative");
    }
    return members_[r];
  }

  std::size_t class_size(NodeId r) const { return members(r).size(); }

  std::vector<NodeId> representatives() const {
    std::vector<NodeId> reps;
    for (NodeId x = 0; x < node_count(); ++x) {
      if (parent_[x] == x) reps.push_back(x);
    }
    return reps;
  }

  // Display name of a class: its smallest member.
  NodeId class_name(NodeId r) const {
    const auto& m = members(r);
    return *std::min_element(m.begin(), m.end());
  }

  Fingerprint fingerprint() const {
    Fingerprint fp;
    for (NodeId r : representatives()) {
      std::vector<NodeId> cls = members_[r];
      std::sort(cls.begin(), cls.end());
      fp.push_back(std::move(cls));
    }
    std::sort(fp.begin(), fp.end());
    return fp;
  }

 private:
  void check_node(NodeId x) const {
    if (x < 0 || x >= node_count()) {
      throw NodeOutOfRange("node " + std::to_string(x) + " not in [0, " +
                           std::to_string(node_count()) + ")");
    }
  }

  mutable std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> members_;  // nonempty only at roots
};

}  // namespace dyckreach
