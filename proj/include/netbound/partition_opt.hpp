#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/limits.hpp"
#include "netbound/network.hpp"
#include "netbound/set_partitions.hpp"
#include "netbound/union_find.hpp"

namespace netbound {

// Which reading of the conflicting-subset predicate to use. `paper` tests
// membership in ne(s(k)) only, exactly as printed; `symmetrized` tests
// ne(s(k)) ∪ ne(t(k)).
enum class ConflictVariant { paper, symmetrized };

inline const char* to_string(ConflictVariant v) {
  return v == ConflictVariant::paper ? "paper" : "symmetrized";
}

// Outcome of a co-location maximization. `witness` is present for the exact
// solvers and absent for the recurrences.
struct OptResult {
  int value = 0;
  IndexSet selected;
  std::optional<Partition> witness;
};

// Î: demands whose endpoints are not adjacent. Only these can have both
// endpoints inside one independent set.
inline IndexSet reducible_pairs(const Network& net) {
  IndexSet out;
  for (const DemandPair& d : net.demands())
    if (!net.adjacent(d.source, d.sink)) out.insert(d.index);
  return out;
}

// conf(k) relative to the reducible set R.
inline IndexSet conflicting_set(const Network& net, IndexSet reducible, int k, ConflictVariant variant) {
  if (!reducible.contains(k)) throw ValidationError("demand " + std::to_string(k) + " is not in the reducible set");
  const DemandPair& dk = net.demand(k);
  NodeSet ends{dk.source, dk.sink};
  NodeSet near = net.adjacency(dk.source);
  if (variant == ConflictVariant::symmetrized) near |= net.adjacency(dk.sink);

  IndexSet out;
  for (int l : reducible) {
    if (l == k) continue;
    const DemandPair& dl = net.demand(l);
    bool sink_clause = ends.contains(dl.sink) && near.contains(dl.source);
    bool source_clause = ends.contains(dl.source) && near.contains(dl.sink);
    if (sink_clause || source_clause) out.insert(l);
  }
  return out;
}

// Co-location groups of a demand selection: connected components of the
// graph whose edges are {s(i), t(i)} for selected i, with unselected nodes as
// singletons. Returns nullopt when some group is not an independent set.
inline std::optional<Partition> colocation_partition(const Network& net, IndexSet selected) {
  UnionFind uf(net.num_nodes());
  for (int i : selected) uf.unite(net.demand(i).source, net.demand(i).sink);
  std::vector<NodeSet> by_root(static_cast<std::size_t>(net.num_nodes()));
  for (NodeId v = 0; v < net.num_nodes(); ++v) by_root[uf.find(v)].insert(v);
  Partition p;
  for (NodeSet s : by_root) {
    if (s.empty()) continue;
    if (!is_independent_set(net, s)) return std::nullopt;
    p.sets.push_back(s);
  }
  p.canonicalize();
  return p;
}

namespace detail {

class Recurrence {
 public:
  Recurrence(const Network& net, IndexSet reducible, ConflictVariant variant, bool memoize)
      : memoize_(memoize) {
    conflicts_.resize(static_cast<std::size_t>(net.num_demands()));
    for (int k : reducible) conflicts_[k] = conflicting_set(net, reducible, k, variant);
  }

  int solve(IndexSet remaining) {
    if (remaining.size() <= 1) return remaining.size();
    if (memoize_) {
      if (auto it = memo_.find(remaining.mask()); it != memo_.end()) return it->second;
    }
    const int k = remaining.front();
    IndexSet without_k = remaining - IndexSet{k};
    int skip = solve(without_k);
    int take = 1 + solve(without_k - conflicts_[k]);
    int best = std::max(skip, take);
    if (memoize_) memo_.emplace(remaining.mask(), best);
    return best;
  }

  // Replays the choices made by solve(); ties favour taking k.
  IndexSet trace(IndexSet remaining) {
    IndexSet chosen;
    while (remaining.size() > 1) {
      const int k = remaining.front();
      IndexSet without_k = remaining - IndexSet{k};
      IndexSet after_take = without_k - conflicts_[k];
      if (1 + solve(after_take) >= solve(without_k)) {
        chosen.insert(k);
        remaining = after_take;
      } else {
        remaining = without_k;
      }
    }
    return chosen | remaining;
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  bool memoize_;
  std::vector<IndexSet> conflicts_;
  std::unordered_map<std::uint64_t, int> memo_;
};

inline IndexSet checked_reducible(const Network& net, const Limits& limits) {
  IndexSet reducible = reducible_pairs(net);
  if (reducible.size() > limits.reducible_pairs)
    throw LimitExceeded("|Î| = " + std::to_string(reducible.size()) + " exceeds limit " +
                        std::to_string(limits.reducible_pairs));
  return reducible;
}

}  // namespace detail

// The recurrence max{Opt(Î∖{k}), 1 + Opt(Î∖(conf(k)∪{k}))} with the lowest
// remaining index as pivot, memoized on the remaining-index bitset.
inline OptResult opt_recursive(const Network& net, ConflictVariant variant, const Limits& limits = {}) {
  IndexSet reducible = detail::checked_reducible(net, limits);
  detail::Recurrence rec(net, reducible, variant, true);
  OptResult r;
  r.value = rec.solve(reducible);
  r.selected = rec.trace(reducible);
  return r;
}

// Same recurrence without memoization. Exponential; for cross-checking.
inline OptResult opt_recursive_naive(const Network& net, ConflictVariant variant, const Limits& limits = {}) {
  IndexSet reducible = detail::checked_reducible(net, limits);
  detail::Recurrence rec(net, reducible, variant, false);
  OptResult r;
  r.value = rec.solve(reducible);
  return r;
}

// Exact maximum number of demands that can simultaneously have both endpoints
// in one set of a partition into independent sets. Branch and bound over Î,
// include-first in index order, so the reported selection is the
// lexicographically first maximum.
inline OptResult opt_oracle(const Network& net, const Limits& limits = {}) {
  IndexSet reducible = detail::checked_reducible(net, limits);
  std::vector<int> order(reducible.begin(), reducible.end());
  const int n = static_cast<int>(order.size());

  // group[v]: current co-location group containing v.
  std::vector<NodeSet> group(static_cast<std::size_t>(net.num_nodes()));
  for (NodeId v = 0; v < net.num_nodes(); ++v) group[v] = NodeSet{v};

  int best = -1;
  IndexSet best_sel;
  IndexSet current;

  auto search = [&](auto&& self, int pos) -> void {
    if (current.size() + (n - pos) <= best) return;
    if (pos == n) {
      best = current.size();
      best_sel = current;
      return;
    }
    const DemandPair& d = net.demand(order[pos]);
    NodeSet merged = group[d.source] | group[d.sink];
    if (group[d.source] == group[d.sink]) {
      current.insert(d.index);
      self(self, pos + 1);
      current.erase(d.index);
      return;  // taking a free pair never hurts
    }
    if (is_independent_set(net, merged)) {
      std::vector<NodeSet> saved = group;
      for (NodeId v : merged) group[v] = merged;
      current.insert(d.index);
      self(self, pos + 1);
      current.erase(d.index);
      group = std::move(saved);
    }
    self(self, pos + 1);
  };
  search(search, 0);

  OptResult r;
  r.value = best;
  r.selected = best_sel;
  r.witness = colocation_partition(net, best_sel);
  return r;
}

// Direct maximization of Σ|I(P_i, P_i)| over every partition of V into
// independent sets (Bell-number enumeration).
inline OptResult opt_partition_enumeration(const Network& net, const Limits& limits = {}) {
  if (net.num_nodes() > limits.enumeration_nodes)
    throw LimitExceeded("|V| = " + std::to_string(net.num_nodes()) + " exceeds partition enumeration limit " +
                        std::to_string(limits.enumeration_nodes));
  int best = -1;
  Partition best_partition;
  for_each_independent_partition(net, std::max(net.num_nodes(), 1), [&](std::span<const int> rgs, int blocks) {
    int count = 0;
    for (const DemandPair& d : net.demands())
      if (rgs[d.source] == rgs[d.sink]) ++count;
    if (count > best) {
      best = count;
      best_partition = partition_from_rgs(rgs, blocks);
    }
  });
  OptResult r;
  r.value = std::max(best, 0);
  auto block = best_partition.block_of(net.num_nodes());
  for (const DemandPair& d : net.demands())
    if (!block.empty() && block[d.source] == block[d.sink]) r.selected.insert(d.index);
  r.witness = best_partition;
  return r;
}

// All solvers side by side. The recurrences are reported, never trusted.
struct OptComparison {
  OptResult oracle;
  std::optional<OptResult> enumeration;  // absent above the enumeration limit
  OptResult recursive_paper;
  OptResult recursive_symmetrized;

  bool enumeration_agrees() const { return !enumeration || enumeration->value == oracle.value; }
  bool paper_agrees() const { return recursive_paper.value == oracle.value; }
  bool symmetrized_agrees() const { return recursive_symmetrized.value == oracle.value; }
  bool all_agree() const { return enumeration_agrees() && paper_agrees() && symmetrized_agrees(); }
};

inline OptComparison compare_opt_methods(const Network& net, const Limits& limits = {}) {
  OptComparison c;
  c.oracle = opt_oracle(net, limits);
  if (net.num_nodes() <= limits.enumeration_nodes) c.enumeration = opt_partition_enumeration(net, limits);
  c.recursive_paper = opt_recursive(net, ConflictVariant::paper, limits);
  c.recursive_symmetrized = opt_recursive(net, ConflictVariant::symmetrized, limits);
  return c;
}

}  // namespace netbound
