#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/hu_data.hpp"
#include "netbound/network.hpp"

namespace netbound {

// |P_1|, ..., |P_n| with n >= 2 and every size >= 1.
using PartSizes = std::vector<int>;

struct GeneratedInstance {
  Network network;
  Partition partition;
};

inline void validate_part_sizes(const PartSizes& sizes) {
  if (sizes.size() < 2) throw ValidationError("need at least two parts");
  for (int s : sizes)
    if (s < 1) throw ValidationError("part sizes must be positive");
}

inline std::string part_label(std::size_t part, int member) {
  return "p" + std::to_string(part + 1) + "_" + std::to_string(member + 1);
}

// Complete n-partite graph, no demands. Nodes are numbered part by part.
inline GeneratedInstance gen_complete_npartite(const PartSizes& sizes) {
  validate_part_sizes(sizes);
  NetworkBuilder b;
  Partition p;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    NodeSet set;
    for (int j = 0; j < sizes[i]; ++j) set.insert(b.add_node(part_label(i, j)));
    p.sets.push_back(set);
  }
  for (std::size_t i = 0; i < p.sets.size(); ++i)
    for (std::size_t k = i + 1; k < p.sets.size(); ++k)
      for (NodeId u : p.sets[i])
        for (NodeId v : p.sets[k]) b.add_edge(u, v);
  return {std::move(b).build(), std::move(p)};
}

namespace detail {

inline GeneratedInstance with_pair_demands(const PartSizes& sizes, bool all_pairs) {
  GeneratedInstance inst = gen_complete_npartite(sizes);
  NetworkBuilder b;
  for (const auto& l : inst.network.labels()) b.add_node(l);
  for (const Edge& e : inst.network.edges()) b.add_edge(e.u, e.v);
  auto block = inst.partition.block_of(inst.network.num_nodes());
  for (NodeId u = 0; u < inst.network.num_nodes(); ++u)
    for (NodeId v = u + 1; v < inst.network.num_nodes(); ++v)
      if (all_pairs || block[u] == block[v]) b.add_demand(u, v);
  inst.network = std::move(b).build();
  return inst;
}

}  // namespace detail

// One demand per unordered node pair inside a part.
inline GeneratedInstance gen_type1(const PartSizes& sizes) { return detail::with_pair_demands(sizes, false); }

// One demand per unordered node pair of V.
inline GeneratedInstance gen_type2(const PartSizes& sizes) { return detail::with_pair_demands(sizes, true); }

inline Network gen_hu() { return parse_network(data::kHuNetwork); }

// Seeded Erdős–Rényi graph with uniformly random demands (s != t). Uses only
// raw mt19937_64 output so the instance is identical on every platform.
inline Network gen_random(int nodes, double edge_prob, int demands, std::uint64_t seed) {
  if (nodes < 1 || nodes > kMaxSetElements) throw ValidationError("node count out of range");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw ValidationError("edge probability must be in [0, 1]");
  if (demands < 0 || demands > kMaxSetElements) throw ValidationError("demand count out of range");
  if (demands > 0 && nodes < 2) throw ValidationError("demands need at least two nodes");
  std::mt19937_64 rng(seed);
  const auto threshold = static_cast<std::uint64_t>(edge_prob * 9007199254740992.0);  // p * 2^53
  NetworkBuilder b;
  for (int v = 0; v < nodes; ++v) b.add_node("v" + std::to_string(v));
  for (NodeId u = 0; u < nodes; ++u)
    for (NodeId v = u + 1; v < nodes; ++v)
      if ((rng() >> 11) < threshold) b.add_edge(u, v);
  const auto n = static_cast<std::uint64_t>(nodes);
  for (int i = 0; i < demands; ++i) {
    auto s = static_cast<NodeId>(rng() % n);
    auto t = static_cast<NodeId>(rng() % (n - 1));
    if (t >= s) ++t;
    b.add_demand(s, t);
  }
  return std::move(b).build();
}

}  // namespace netbound
