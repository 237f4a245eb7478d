#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dyckreach/errors.hpp"

namespace dyckreach {

using NodeId = std::int32_t;

enum class Polarity { open, close };

// A parenthesis symbol: (_kind or )_kind, kind >= 1.
struct Label {
  int kind = 1;
  Polarity polarity = Polarity::open;

  static Label open(int kind) { return {kind, Polarity::open}; }
  static Label close(int kind) { return {kind, Polarity::close}; }
};

// Canonical open-parenthesis edge src --(_kind--> dst. The close edge
// dst --)_kind--> src is implied by bidirectedness and never stored.
struct EdgeRef {
  NodeId src = 0;
  int kind = 1;
  NodeId dst = 0;

  auto operator<=>(const EdgeRef&) const = default;
};

// The input bidirected graph G. Stores only canonical open edges, as a set
// (duplicates are errors: merged-edge weights count distinct originals).
class InputGraph {
 public:
  InputGraph() = default;
  explicit InputGraph(NodeId node_count, int declared_labels = 0)
      : node_count_(node_count), declared_labels_(declared_labels) {}

  NodeId node_count() const { return node_count_; }
  int declared_labels() const { return declared_labels_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<EdgeRef>& edges() const { return edges_; }

  static EdgeRef canonical(NodeId u, Label label, NodeId v) {
    if (label.polarity == Polarity::close) return {v, label.kind, u};
    return {u, label.kind, v};
  }

  bool has_edge(const EdgeRef& e) const { return edges_.contains(e); }

  void add_edge(NodeId u, Label label, NodeId v) {
    EdgeRef e = canonical(u, label, v);
    check_edge(e);
    if (edges_.contains(e)) {
      throw DuplicateEdge("duplicate edge " + describe(e));
    }
    edges_.insert(e);
    reverse_.insert({e.dst, e.kind, e.src});
  }

  void remove_edge(NodeId u, Label label, NodeId v) {
    EdgeRef e = canonical(u, label, v);
    check_edge(e);
    if (edges_.erase(e) == 0) {
      throw MissingEdge("missing edge " + describe(e));
    }
    reverse_.erase({e.dst, e.kind, e.src});
  }

  // Canonical edges leaving u.
  std::vector<EdgeRef> out_edges(NodeId u) const {
    check_node(u);
    std::vector<EdgeRef> result;
    auto it = edges_.lower_bound({u, 0, 0});
    for (; it != edges_.end() && it->src == u; ++it) result.push_back(*it);
    return result;
  }

  // Canonical edges entering v.
  std::vector<EdgeRef> in_edges(NodeId v) const {
    check_node(v);
    std::vector<EdgeRef> result;
    auto it = reverse_.lower_bound({v, 0, 0});
    for (; it != reverse_.end() && std::get<0>(*it) == v; ++it) {
      result.push_back({std::get<2>(*it), std::get<1>(*it), std::get<0>(*it)});
    }
    return result;
  }

  bool operator==(const InputGraph& other) const {
    return node_count_ == other.node_count_ &&
           declared_labels_ == other.declared_labels_ &&
           edges_ == other.edges_;
  }

  // Line-oriented format: "nodes <n>", optional "labels <k>", then
  // "edge <src> <kind> <dst>" lines. '#' starts a comment.
  static InputGraph parse(std::string_view text) {
    InputGraph g;
    bool have_nodes = false;
    bool have_edges = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw.substr(0, raw.find('#'));
      std::istringstream ls(line);
      std::string word;
      if (!(ls >> word)) continue;
      if (word == "nodes") {
        if (have_nodes) throw SyntaxError(lineno, "repeated nodes header");
        long n;
        if (!(ls >> n) || n < 0) throw SyntaxError(lineno, "bad node count");
        g.node_count_ = static_cast<NodeId>(n);
        have_nodes = true;
      } else if (word == "labels") {
        if (!have_nodes) throw SyntaxError(lineno, "labels before nodes");
        if (have_edges) throw SyntaxError(lineno, "labels after edges");
        long k;
        if (!(ls >> k) || k < 1) throw SyntaxError(lineno, "bad label count");
        g.declared_labels_ = static_cast<int>(k);
      } else if (word == "edge") {
        if (!have_nodes) throw SyntaxError(lineno, "edge before nodes header");
        long s, k, d;
        if (!(ls >> s >> k >> d)) throw SyntaxError(lineno, "bad edge line");
        have_edges = true;
        g.add_edge(static_cast<NodeId>(s), Label::open(static_cast<int>(k)),
                   static_cast<NodeId>(d));
      } else {
        throw SyntaxError(lineno, "unknown directive '" + word + "'");
      }
      std::string rest;
      if (ls >> rest) throw SyntaxError(lineno, "trailing tokens");
    }
    if (!have_nodes) throw SyntaxError(lineno, "missing nodes header");
    return g;
  }

  std::string serialize() const {
    std::ostringstream out;
    out << "nodes " << node_count_ << "\n";
    if (declared_labels_ > 0) out << "labels " << declared_labels_ << "\n";
    for (const EdgeRef& e : edges_) {
      out << "edge " << e.src << " " << e.kind << " " << e.dst << "\n";
    }
    return out.str();
  }

 private:
  void check_node(NodeId x) const {
    if (x < 0 || x >= node_count_) {
      throw NodeOutOfRange("node " + std::to_string(x) + " not in [0, " +
                           std::to_string(node_count_) + ")");
    }
  }

  void check_edge(const EdgeRef& e) const {
    check_node(e.src);
    check_node(e.dst);
    if (e.kind < 1) throw InvalidLabel("label kind must be >= 1");
    if (declared_labels_ > 0 && e.kind > declared_labels_) {
      throw InvalidLabel("label kind " + std::to_string(e.kind) +
                         " exceeds alphabet size " +
                         std::to_string(declared_labels_));
    }
  }

  static std::string describe(const EdgeRef& e) {
    return std::to_string(e.src) + " -(" + std::to_string(e.kind) + "-> " +
           std::to_string(e.dst);
  }

  NodeId node_count_ = 0;
  int declared_labels_ = 0;  // 0 = undeclared, bound is max kind in use
  std::set<EdgeRef> edges_;
  std::set<std::tuple<NodeId, int, NodeId>> reverse_;  // (dst, kind, src)
};

}  // namespace dyckreach
