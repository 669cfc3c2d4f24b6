#pragma once

#include <span>
#include <vector>

#include "netbound/network.hpp"

namespace netbound {

namespace detail {

template <class Admit, class Visit>
void restricted_growth(std::vector<int>& rgs, int pos, int blocks, int max_blocks, Admit& admit,
                       Visit& visit) {
  const int n = static_cast<int>(rgs.size());
  if (pos == n) {
    visit(std::span<const int>(rgs), blocks);
    return;
  }
  const int limit = std::min(blocks + 1, max_blocks);
  for (int b = 0; b < limit; ++b) {
    if (!admit(std::span<const int>(rgs.data(), static_cast<std::size_t>(pos)), pos, b)) continue;
    rgs[pos] = b;
    restricted_growth(rgs, pos + 1, b == blocks ? blocks + 1 : blocks, max_blocks, admit, visit);
  }
}

}  // namespace detail

// Enumerates set partitions of {0..n-1} as restricted growth strings
// a[0] = 0, a[i] <= 1 + max(a[0..i-1]), at most max_blocks blocks.
// admit(prefix, element, block) may reject placing `element` in `block`,
// pruning every completion of that prefix.
// visit(rgs, num_blocks) is called once per surviving partition.
template <class Admit, class Visit>
void for_each_set_partition(int n, int max_blocks, Admit&& admit, Visit&& visit) {
  if (n == 0) {
    std::vector<int> empty;
    visit(std::span<const int>(empty), 0);
    return;
  }
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  detail::restricted_growth(rgs, 0, 0, max_blocks, admit, visit);
}

template <class Visit>
void for_each_set_partition(int n, Visit&& visit) {
  auto any = [](std::span<const int>, int, int) { return true; };
  for_each_set_partition(n, n, any, visit);
}

// Partitions of V whose blocks are independent sets, i.e. proper colourings
// up to renaming of colours.
template <class Visit>
void for_each_independent_partition(const Network& net, int max_blocks, Visit&& visit) {
  auto admit = [&net](std::span<const int> prefix, int v, int block) {
    for (int u = 0; u < static_cast<int>(prefix.size()); ++u)
      if (prefix[u] == block && net.adjacent(u, v)) return false;
    return true;
  };
  for_each_set_partition(net.num_nodes(), max_blocks, admit, visit);
}

inline Partition partition_from_rgs(std::span<const int> rgs, int blocks) {
  Partition p;
  p.sets.resize(static_cast<std::size_t>(blocks));
  for (int v = 0; v < static_cast<int>(rgs.size()); ++v) p.sets[rgs[v]].insert(v);
  return p;
}

}  // namespace netbound
