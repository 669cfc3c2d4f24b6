#pragma once

#include <algorithm>
#include <compare>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/small_set.hpp"

namespace netbound {

// Dense node index, 0..|V|-1, assigned in declaration order.
using NodeId = int;

// Undirected unit-capacity edge, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DemandPair {
  int index = 0;
  NodeId source = 0;
  NodeId sink = 0;
  friend bool operator==(const DemandPair&, const DemandPair&) = default;
};

// Ordered list of disjoint node sets. Validity against a network is checked
// by is_valid_partition.
struct Partition {
  std::vector<NodeSet> sets;

  // Sets ordered by their smallest node index.
  void canonicalize() {
    std::sort(sets.begin(), sets.end(), [](NodeSet a, NodeSet b) {
      if (a.empty() || b.empty()) return !a.empty() && b.empty();
      return a.front() < b.front();
    });
  }

  // Block number of every node; -1 for nodes not covered.
  std::vector<int> block_of(int num_nodes) const {
    std::vector<int> block(static_cast<std::size_t>(num_nodes), -1);
    for (std::size_t b = 0; b < sets.size(); ++b)
      for (int v : sets[b])
        if (v < num_nodes) block[v] = static_cast<int>(b);
    return block;
  }

  static Partition singletons(int num_nodes) {
    Partition p;
    for (int v = 0; v < num_nodes; ++v) p.sets.push_back(NodeSet{v});
    return p;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

class NetworkBuilder;

// An undirected unicast network G = (V, E, I, s, t). Immutable once built.
class Network {
 public:
  Network() = default;

  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_demands() const { return static_cast<int>(demands_.size()); }

  const std::string& label(NodeId v) const { return labels_.at(static_cast<std::size_t>(v)); }
  std::span<const std::string> labels() const { return labels_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const DemandPair> demands() const { return demands_; }
  const DemandPair& demand(int i) const { return demands_.at(static_cast<std::size_t>(i)); }

  std::optional<NodeId> find_node(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId node(std::string_view label) const {
    auto id = find_node(label);
    if (!id) throw ValidationError("unknown node '" + std::string(label) + "'");
    return *id;
  }

  NodeSet all_nodes() const { return NodeSet::first_n(num_nodes()); }
  IndexSet all_demands() const { return IndexSet::first_n(num_demands()); }

  NodeSet adjacency(NodeId v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  bool adjacent(NodeId a, NodeId b) const { return adjacency(a).contains(b); }

  // Index of edge {a, b} in edges(), if present.
  std::optional<int> edge_index(NodeId a, NodeId b) const {
    Edge key{std::min(a, b), std::max(a, b)};
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i] == key) return static_cast<int>(i);
    return std::nullopt;
  }

  // Label-level equality: same node labels, same edge set, same demand
  // sequence. Dense indices may differ.
  friend bool operator==(const Network& a, const Network& b) {
    if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges() ||
        a.num_demands() != b.num_demands())
      return false;
    if (std::set<std::string>(a.labels_.begin(), a.labels_.end()) !=
        std::set<std::string>(b.labels_.begin(), b.labels_.end()))
      return false;
    auto edge_labels = [](const Network& n) {
      std::set<std::pair<std::string, std::string>> out;
      for (const Edge& e : n.edges_) {
        auto x = n.label(e.u), y = n.label(e.v);
        out.emplace(std::min(x, y), std::max(x, y));
      }
      return out;
    };
    if (edge_labels(a) != edge_labels(b)) return false;
    for (int i = 0; i < a.num_demands(); ++i) {
      if (a.label(a.demand(i).source) != b.label(b.demand(i).source) ||
          a.label(a.demand(i).sink) != b.label(b.demand(i).sink))
        return false;
    }
    return true;
  }

 private:
  friend class NetworkBuilder;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> adjacency_;
  std::vector<DemandPair> demands_;
};

inline bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return c == '#' || c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

// Incremental construction with model validation on every insertion.
class NetworkBuilder {
 public:
  // Declares a node; re-declaring an existing label returns its id.
  NodeId add_node(std::string_view label) {
    if (auto id = net_.find_node(label)) return *id;
    if (!is_valid_label(label)) throw ValidationError("invalid node label '" + std::string(label) + "'");
    if (net_.num_nodes() >= kMaxSetElements)
      throw ValidationError("too many nodes (limit " + std::to_string(kMaxSetElements) + ")");
    NodeId id = net_.num_nodes();
    net_.labels_.emplace_back(label);
    net_.index_.emplace(std::string(label), id);
    net_.adjacency_.emplace_back();
    return id;
  }

  // Endpoints are declared left to right.
  int add_edge(std::string_view a, std::string_view b) {
    NodeId u = add_node(a);
    return add_edge(u, add_node(b));
  }

  int add_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) throw ValidationError("self-loop on node '" + net_.label(a) + "'");
    if (net_.adjacent(a, b))
      throw ValidationError("duplicate edge '" + net_.label(a) + "' '" + net_.label(b) + "'");
    net_.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    net_.adjacency_[a].insert(b);
    net_.adjacency_[b].insert(a);
    return net_.num_edges() - 1;
  }

  int add_demand(std::string_view source, std::string_view sink) {
    NodeId s = add_node(source);
    return add_demand(s, add_node(sink));
  }

  int add_demand(NodeId source, NodeId sink) {
    check_node(source);
    check_node(sink);
    if (source == sink) throw ValidationError("demand with source == sink at '" + net_.label(source) + "'");
    if (net_.num_demands() >= kMaxSetElements)
      throw ValidationError("too many demands (limit " + std::to_string(kMaxSetElements) + ")");
    int index = net_.num_demands();
    net_.demands_.push_back(DemandPair{index, source, sink});
    return index;
  }

  const Network& peek() const { return net_; }
  Network build() && { return std::move(net_); }
  Network build() const& { return net_; }

 private:
  void check_node(NodeId v) const {
    if (v < 0 || v >= net_.num_nodes()) throw ValidationError("node index out of range");
  }
  Network net_;
};

// ---------------------------------------------------------------------------
// Queries

// ne(u) = {v : {u, v} in E}
inline NodeSet neighbors(const Network& net, NodeId u) {
  if (u < 0 || u >= net.num_nodes()) throw ValidationError("unknown node index " + std::to_string(u));
  return net.adjacency(u);
}

inline NodeSet neighbors(const Network& net, std::string_view label) {
  return net.adjacency(net.node(label));
}

// I(A, B) = {i : s(i) in A, t(i) in B}
inline IndexSet demand_indices(const Network& net, NodeSet from, NodeSet to) {
  IndexSet out;
  for (const DemandPair& d : net.demands())
    if (from.contains(d.source) && to.contains(d.sink)) out.insert(d.index);
  return out;
}

// Edges with exactly one endpoint in S.
inline std::vector<Edge> cut_edges(const Network& net, NodeSet side) {
  std::vector<Edge> out;
  for (const Edge& e : net.edges())
    if (side.contains(e.u) != side.contains(e.v)) out.push_back(e);
  return out;
}

inline int cut_size(const Network& net, NodeSet side) {
  int count = 0;
  for (NodeId v : side) count += (net.adjacency(v) - side).size();
  return count;
}

// Demands with exactly one endpoint in S.
inline IndexSet separated_demands(const Network& net, NodeSet side) {
  IndexSet out;
  for (const DemandPair& d : net.demands())
    if (side.contains(d.source) != side.contains(d.sink)) out.insert(d.index);
  return out;
}

inline bool is_independent_set(const Network& net, NodeSet set) {
  for (NodeId v : set)
    if (net.adjacency(v).intersects(set)) return false;
  return true;
}

inline bool is_valid_partition(const Network& net, const Partition& p) {
  NodeSet covered;
  for (NodeSet s : p.sets) {
    if (s.empty() || s.intersects(covered)) return false;
    if (!s.is_subset_of(net.all_nodes())) return false;
    if (!is_independent_set(net, s)) return false;
    covered |= s;
  }
  return covered == net.all_nodes();
}

// Sum over partition sets of |I(P_i, P_i)|.
inline int colocated_demand_count(const Network& net, const Partition& p) {
  int total = 0;
  for (NodeSet s : p.sets) total += demand_indices(net, s, s).size();
  return total;
}

// ---------------------------------------------------------------------------
// Instance text format

namespace detail {

inline std::vector<std::string> tokenize_line(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

}  // namespace detail

inline Network parse_network(std::istream& in) {
  NetworkBuilder builder;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];
    try {
      if (keyword == "node") {
        if (tokens.size() != 2) throw ParseError(line_no, "expected 'node <label>'");
        builder.add_node(tokens[1]);
      } else if (keyword == "edge") {
        if (tokens.size() != 3) throw ParseError(line_no, "expected 'edge <label> <label>'");
        builder.add_edge(tokens[1], tokens[2]);
      } else if (keyword == "pair") {
        if (tokens.size() != 3) throw ParseError(line_no, "expected 'pair <source> <sink>'");
        builder.add_demand(tokens[1], tokens[2]);
      } else {
        throw ParseError(line_no, "unknown keyword '" + keyword + "'");
      }
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return std::move(builder).build();
}

inline Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_network(in);
}

// Canonical text: sorted node lines, sorted edge lines, pair lines in index order.
inline std::string render_network(const Network& net) {
  std::vector<std::string> nodes(net.labels().begin(), net.labels().end());
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::string> edges;
  for (const Edge& e : net.edges()) {
    auto a = net.label(e.u), b = net.label(e.v);
    if (b < a) std::swap(a, b);
    edges.push_back("edge " + a + " " + b);
  }
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const auto& n : nodes) out += "node " + n + "\n";
  for (const auto& e : edges) out += e + "\n";
  for (const DemandPair& d : net.demands())
    out += "pair " + net.label(d.source) + " " + net.label(d.sink) + "\n";
  return out;
}

// Partition file: one set per line, whitespace-separated node labels.
inline Partition parse_partition(const Network& net, std::istream& in) {
  Partition p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    NodeSet set;
    for (const auto& tok : tokens) {
      auto id = net.find_node(tok);
      if (!id) throw ParseError(line_no, "unknown node label '" + tok + "'");
      set.insert(*id);
    }
    p.sets.push_back(set);
  }
  return p;
}

inline Partition parse_partition(const Network& net, std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_partition(net, in);
}

inline std::string render_node_set(const Network& net, NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out += ",";
    out += net.label(v);
    first = false;
  }
  return out + "}";
}

inline std::string render_index_set(IndexSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : s) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

inline std::string render_partition(const Network& net, const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    if (i) out += " ";
    out += render_node_set(net, p.sets[i]);
  }
  return out;
}

}  // namespace netbound
