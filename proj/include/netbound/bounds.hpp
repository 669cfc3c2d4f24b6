#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "netbound/errors.hpp"
#include "netbound/limits.hpp"
#include "netbound/network.hpp"
#include "netbound/partition_opt.hpp"
#include "netbound/rational.hpp"
#include "netbound/set_partitions.hpp"

namespace netbound {

enum class BoundKind { partition, partition_given, sparsity, tightened3 };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::partition: return "partition";
    case BoundKind::partition_given: return "partition_given";
    case BoundKind::sparsity: return "sparsity";
    case BoundKind::tightened3: return "tightened3";
  }
  return "?";
}

// Partition plus the demands separated from their sink by every inter-set cut.
struct TightenedWitness {
  Partition partition;
  IndexSet separated;
};

struct CutWitness {
  NodeSet side;
};

using BoundWitness = std::variant<Partition, CutWitness, TightenedWitness>;

struct BoundReport {
  BoundKind kind = BoundKind::partition;
  Rational value;
  BoundWitness witness;
  // tightened3 only: set when no 3-partition improved on the plain partition
  // bound (or none exists) and the plain bound is reported instead.
  bool fell_back = false;
};

namespace detail {

inline void require_demands(const Network& net) {
  if (net.num_demands() == 0) throw ValidationError("network has no demands; the bound is undefined");
}

inline Rational edge_ratio(const Network& net, int denominator) {
  return make_rational(net.num_edges(), denominator);
}

// True iff s and t are disconnected once every edge between `a` and `b` is removed.
inline bool separated_by(const Network& net, NodeSet a, NodeSet b, NodeId s, NodeId t) {
  NodeSet seen{s};
  NodeSet frontier{s};
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeId u : frontier) {
      NodeSet out = net.adjacency(u);
      if (a.contains(u)) out -= b;
      if (b.contains(u)) out -= a;
      next |= out;
    }
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return !seen.contains(t);
}

}  // namespace detail

// Demands k such that, for each of the three unordered pairs of sets of a
// 3-partition, deleting the edges between that pair disconnects s(k) from t(k).
inline IndexSet separated_by_all_cuts(const Network& net, const Partition& p) {
  if (p.sets.size() != 3) throw ValidationError("expected a partition into exactly three sets");
  constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  IndexSet out;
  for (const DemandPair& d : net.demands()) {
    bool all = true;
    for (auto [i, j] : pairs) {
      if (!detail::separated_by(net, p.sets[i], p.sets[j], d.source, d.sink)) {
        all = false;
        break;
      }
    }
    if (all) out.insert(d.index);
  }
  return out;
}

// |E| / (|I| + Σ|I(P_i,P_i)|) at one valid partition.
inline BoundReport partition_bound_given(const Network& net, const Partition& p) {
  detail::require_demands(net);
  if (!is_valid_partition(net, p)) throw ValidationError("not a partition of V into independent sets");
  BoundReport r;
  r.kind = BoundKind::partition_given;
  r.value = detail::edge_ratio(net, net.num_demands() + colocated_demand_count(net, p));
  r.witness = p;
  return r;
}

// |E| / (|I| + |opt(Î)|), with opt computed by the exact oracle.
inline BoundReport partition_bound(const Network& net, const Limits& limits = {}) {
  detail::require_demands(net);
  OptResult opt = opt_oracle(net, limits);
  BoundReport r;
  r.kind = BoundKind::partition;
  r.value = detail::edge_ratio(net, net.num_demands() + opt.value);
  r.witness = *opt.witness;
  return r;
}

// Sparsest cut: min over S of |δ(S)| / #demands separated by S. The witness is
// the smallest-mask minimizer.
inline BoundReport sparsity_bound(const Network& net, const Limits& limits = {}) {
  detail::require_demands(net);
  const int n = net.num_nodes();
  if (n > limits.cut_nodes)
    throw LimitExceeded("|V| = " + std::to_string(n) + " exceeds cut enumeration limit " +
                        std::to_string(limits.cut_nodes));
  std::optional<Rational> best;
  NodeSet best_side;
  const std::uint64_t full = NodeSet::first_n(n).mask();
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    NodeSet side = NodeSet::from_mask(mask);
    int separated = separated_demands(net, side).size();
    if (separated == 0) continue;
    Rational ratio = make_rational(cut_size(net, side), separated);
    if (!best || ratio < *best) {
      best = ratio;
      best_side = side;
    }
  }
  if (!best) throw ValidationError("no cut separates any demand");
  BoundReport r;
  r.kind = BoundKind::sparsity;
  r.value = *best;
  r.witness = CutWitness{best_side};
  return r;
}

// Partition bound strengthened on 3-partitions: every demand separated by all
// three inter-set cuts adds one to the denominator. Minimized over all valid
// 3-partitions and against the plain partition bound.
inline BoundReport tightened3_bound(const Network& net, const Limits& limits = {}) {
  detail::require_demands(net);
  if (net.num_nodes() > limits.partition_nodes)
    throw LimitExceeded("|V| = " + std::to_string(net.num_nodes()) + " exceeds 3-partition enumeration limit " +
                        std::to_string(limits.partition_nodes));
  BoundReport plain = partition_bound(net, limits);

  std::optional<Rational> best;
  TightenedWitness best_witness;
  for_each_independent_partition(net, 3, [&](std::span<const int> rgs, int blocks) {
    if (blocks != 3) return;
    Partition p = partition_from_rgs(rgs, blocks);
    IndexSet separated = separated_by_all_cuts(net, p);
    Rational candidate =
        detail::edge_ratio(net, net.num_demands() + colocated_demand_count(net, p) + separated.size());
    if (!best || candidate < *best) {
      best = candidate;
      best_witness = TightenedWitness{std::move(p), separated};
    }
  });

  BoundReport r;
  r.kind = BoundKind::tightened3;
  if (best && *best <= plain.value) {
    r.value = *best;
    r.witness = best_witness;
  } else {
    r.value = plain.value;
    r.witness = TightenedWitness{std::get<Partition>(plain.witness), IndexSet{}};
    r.fell_back = true;
  }
  return r;
}

// Re-evaluates the bound formula from the report's witness alone.
inline Rational recompute_bound(const Network& net, const BoundReport& report) {
  detail::require_demands(net);
  return std::visit(
      [&](const auto& w) -> Rational {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Partition>) {
          if (!is_valid_partition(net, w)) throw ValidationError("witness is not a valid partition");
          return detail::edge_ratio(net, net.num_demands() + colocated_demand_count(net, w));
        } else if constexpr (std::is_same_v<W, CutWitness>) {
          int separated = separated_demands(net, w.side).size();
          if (separated == 0) throw ValidationError("witness cut separates no demand");
          return make_rational(cut_size(net, w.side), separated);
        } else {
          if (!is_valid_partition(net, w.partition)) throw ValidationError("witness is not a valid partition");
          IndexSet separated = w.partition.sets.size() == 3 ? separated_by_all_cuts(net, w.partition) : IndexSet{};
          if (!w.separated.is_subset_of(separated)) throw ValidationError("witness claims an unseparated demand");
          return detail::edge_ratio(
              net, net.num_demands() + colocated_demand_count(net, w.partition) + w.separated.size());
        }
      },
      report.witness);
}

}  // namespace netbound
