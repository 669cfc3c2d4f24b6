#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/limits.hpp"
#include "netbound/network.hpp"
#include "netbound/rational.hpp"
#include "netbound/simplex.hpp"

namespace netbound {

// Arc 2e is edges()[e] traversed u -> v, arc 2e+1 is v -> u.
inline NodeId arc_tail(const Network& net, int arc) {
  const Edge& e = net.edges()[static_cast<std::size_t>(arc / 2)];
  return arc % 2 == 0 ? e.u : e.v;
}
inline NodeId arc_head(const Network& net, int arc) {
  const Edge& e = net.edges()[static_cast<std::size_t>(arc / 2)];
  return arc % 2 == 0 ? e.v : e.u;
}
inline std::optional<int> arc_index(const Network& net, NodeId tail, NodeId head) {
  auto e = net.edge_index(tail, head);
  if (!e) return std::nullopt;
  return 2 * *e + (tail < head ? 0 : 1);
}

// Per-demand directed edge flows at a common rate.
struct FlowAssignment {
  Rational rate;
  std::vector<std::vector<Rational>> flows;  // [demand][arc]

  static FlowAssignment zero(const Network& net) {
    FlowAssignment fa;
    fa.flows.assign(static_cast<std::size_t>(net.num_demands()),
                    std::vector<Rational>(static_cast<std::size_t>(2 * net.num_edges())));
    return fa;
  }

  // Load of undirected edge e: Σ_i f_i(u,v) + f_i(v,u).
  Rational edge_load(int e) const {
    Rational load = 0;
    for (const auto& f : flows) load += f[2 * e] + f[2 * e + 1];
    return load;
  }
};

struct LpCertificate {
  std::vector<std::string> basis;
  Rational objective;
  int variables = 0;
  int constraints = 0;
  int pivots = 0;
};

struct ConcurrentFlow {
  FlowAssignment assignment;
  LpCertificate certificate;
};

struct RoutingCheck {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

// Exact feasibility check of a FlowAssignment: non-negativity, conservation
// with supply r at s(i) and demand r at t(i), and unit capacity per
// undirected edge summed over both directions and all demands.
inline RoutingCheck verify_routing(const Network& net, const FlowAssignment& fa) {
  RoutingCheck check;
  auto fail = [&check](std::string msg) {
    check.ok = false;
    check.violations.push_back(std::move(msg));
  };
  const int arcs = 2 * net.num_edges();
  if (static_cast<int>(fa.flows.size()) != net.num_demands()) {
    fail("assignment has " + std::to_string(fa.flows.size()) + " demands, network has " +
         std::to_string(net.num_demands()));
    return check;
  }
  if (sgn(fa.rate) < 0) fail("negative rate " + to_fraction_string(fa.rate));
  for (const DemandPair& d : net.demands()) {
    const auto& f = fa.flows[d.index];
    if (static_cast<int>(f.size()) != arcs) {
      fail("demand " + std::to_string(d.index) + " has wrong arc count");
      continue;
    }
    std::vector<Rational> net_out(static_cast<std::size_t>(net.num_nodes()));
    for (int a = 0; a < arcs; ++a) {
      if (sgn(f[a]) < 0)
        fail("demand " + std::to_string(d.index) + ": negative flow on " + net.label(arc_tail(net, a)) + "->" +
             net.label(arc_head(net, a)));
      net_out[arc_tail(net, a)] += f[a];
      net_out[arc_head(net, a)] -= f[a];
    }
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      Rational expected = v == d.source ? fa.rate : v == d.sink ? Rational(-fa.rate) : Rational(0);
      if (net_out[v] != expected)
        fail("demand " + std::to_string(d.index) + ": conservation fails at " + net.label(v) + " (net out " +
             to_fraction_string(net_out[v]) + ", expected " + to_fraction_string(expected) + ")");
    }
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    Rational load = fa.edge_load(e);
    if (load > 1) {
      const Edge& edge = net.edges()[e];
      fail("capacity exceeded on {" + net.label(edge.u) + "," + net.label(edge.v) + "}: load " +
           to_fraction_string(load));
    }
  }
  return check;
}

namespace detail {

// Demands sharing a source are routed as one single-source commodity; the
// per-demand flows are recovered afterwards by path decomposition.
struct Commodity {
  NodeId source = 0;
  std::vector<int> demands;
};

inline std::vector<Commodity> group_by_source(const Network& net) {
  std::vector<Commodity> out;
  std::map<NodeId, std::size_t> slot;
  for (const DemandPair& d : net.demands()) {
    auto [it, fresh] = slot.emplace(d.source, out.size());
    if (fresh) out.push_back(Commodity{d.source, {}});
    out[it->second].demands.push_back(d.index);
  }
  return out;
}

// Splits one commodity's arc flow into per-demand s-t flows. Circulations
// are dropped; every remaining unit lies on an s -> t(i) path.
inline void decompose_commodity(const Network& net, const Commodity& c, std::vector<Rational> arc_flow,
                                const Rational& rate, FlowAssignment& out) {
  const int arcs = 2 * net.num_edges();
  std::vector<Rational> need(static_cast<std::size_t>(net.num_nodes()));
  std::map<int, Rational> demand_need;
  for (int i : c.demands) {
    need[net.demand(i).sink] += rate;
    demand_need[i] = rate;
  }
  std::vector<std::vector<int>> out_arcs(static_cast<std::size_t>(net.num_nodes()));
  for (int a = 0; a < arcs; ++a) out_arcs[arc_tail(net, a)].push_back(a);

  auto outstanding = [&] {
    return std::any_of(need.begin(), need.end(), [](const Rational& x) { return sgn(x) > 0; });
  };
  while (outstanding()) {
    std::vector<int> path;
    std::vector<int> position(static_cast<std::size_t>(net.num_nodes()), -1);
    NodeId at = c.source;
    position[at] = 0;
    while (at == c.source || sgn(need[at]) <= 0) {
      int next_arc = -1;
      for (int a : out_arcs[at]) {
        if (sgn(arc_flow[a]) > 0) {
          next_arc = a;
          break;
        }
      }
      if (next_arc < 0) throw std::logic_error("flow decomposition stuck: conservation violated");
      NodeId head = arc_head(net, next_arc);
      if (position[head] >= 0) {
        // Cancel the cycle head -> ... -> at -> head.
        std::vector<int> cycle(path.begin() + position[head], path.end());
        cycle.push_back(next_arc);
        Rational amount = arc_flow[cycle.front()];
        for (int a : cycle) amount = std::min(amount, arc_flow[a]);
        for (int a : cycle) arc_flow[a] -= amount;
        for (std::size_t k = static_cast<std::size_t>(position[head]); k < path.size(); ++k)
          position[arc_head(net, path[k])] = -1;
        path.resize(static_cast<std::size_t>(position[head]));
        at = head;
        continue;
      }
      path.push_back(next_arc);
      position[head] = static_cast<int>(path.size());
      at = head;
    }
    Rational amount = need[at];
    for (int a : path) amount = std::min(amount, arc_flow[a]);
    for (int a : path) arc_flow[a] -= amount;
    need[at] -= amount;
    for (auto& [i, left] : demand_need) {
      if (sgn(amount) == 0) break;
      if (net.demand(i).sink != at || sgn(left) == 0) continue;
      Rational part = std::min(amount, left);
      for (int a : path) out.flows[i][a] += part;
      left -= part;
      amount -= part;
    }
  }
}

}  // namespace detail

// Maximum concurrent (symmetric-rate) multicommodity flow, solved exactly.
// Edge-based formulation: directed arc variables per source commodity,
// conservation rows with supply/demand proportional to r, and one unit
// capacity row per undirected edge. `shuffle_seed` permutes the LP column
// order; the optimum must not depend on it.
inline ConcurrentFlow max_concurrent_flow(const Network& net, const Limits& limits = {},
                                          std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  if (net.num_demands() == 0) throw ValidationError("network has no demands; the concurrent rate is undefined");
  const auto commodities = detail::group_by_source(net);
  const int arcs = 2 * net.num_edges();
  const long long num_vars = static_cast<long long>(arcs) * static_cast<long long>(commodities.size()) + 1;
  if (num_vars > limits.lp_variables)
    throw LimitExceeded("LP needs " + std::to_string(num_vars) + " variables, limit " +
                        std::to_string(limits.lp_variables));

  // Column order: (commodity, arc) pairs then r, optionally shuffled.
  std::vector<int> order(static_cast<std::size_t>(num_vars));
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  const int rate_key = static_cast<int>(num_vars) - 1;
  std::vector<int> column(static_cast<std::size_t>(num_vars));
  LinearProgram lp;
  for (int key : order) {
    std::string name;
    if (key == rate_key) {
      name = "rate";
    } else {
      int c = key / arcs, a = key % arcs;
      name = "f[" + net.label(commodities[c].source) + "][" + net.label(arc_tail(net, a)) + "->" +
             net.label(arc_head(net, a)) + "]";
    }
    column[key] = lp.add_variable(std::move(name));
  }
  const int rate_var = column[rate_key];
  lp.set_objective(rate_var, 1);

  for (std::size_t c = 0; c < commodities.size(); ++c) {
    std::vector<Rational> supply(static_cast<std::size_t>(net.num_nodes()));
    for (int i : commodities[c].demands) {
      supply[net.demand(i).source] += 1;
      supply[net.demand(i).sink] -= 1;
    }
    for (NodeId v = 0; v < net.num_nodes(); ++v) {
      LinearConstraint row;
      row.sense = RowSense::equal;
      row.rhs = 0;
      for (int a = 0; a < arcs; ++a) {
        int var = column[static_cast<int>(c) * arcs + a];
        if (arc_tail(net, a) == v) row.terms.push_back({var, 1});
        if (arc_head(net, a) == v) row.terms.push_back({var, -1});
      }
      if (sgn(supply[v]) != 0) row.terms.push_back({rate_var, -supply[v]});
      if (!row.terms.empty()) lp.add_constraint(std::move(row));
    }
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    LinearConstraint row;
    row.sense = RowSense::less_equal;
    row.rhs = 1;
    for (std::size_t c = 0; c < commodities.size(); ++c) {
      row.terms.push_back({column[static_cast<int>(c) * arcs + 2 * e], 1});
      row.terms.push_back({column[static_cast<int>(c) * arcs + 2 * e + 1], 1});
    }
    lp.add_constraint(std::move(row));
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw std::logic_error("concurrent flow LP not optimal (it is always feasible and bounded)");

  ConcurrentFlow out;
  out.assignment = FlowAssignment::zero(net);
  out.assignment.rate = sol.values[rate_var];
  for (std::size_t c = 0; c < commodities.size(); ++c) {
    std::vector<Rational> arc_flow(static_cast<std::size_t>(arcs));
    for (int a = 0; a < arcs; ++a) arc_flow[a] = sol.values[column[static_cast<int>(c) * arcs + a]];
    detail::decompose_commodity(net, commodities[c], std::move(arc_flow), out.assignment.rate, out.assignment);
  }
  out.certificate.basis = std::move(sol.basic_columns);
  out.certificate.objective = sol.objective;
  out.certificate.variables = lp.num_variables();
  out.certificate.constraints = lp.num_constraints();
  out.certificate.pivots = sol.pivots;
  return out;
}

// ---------------------------------------------------------------------------
// Constructive routing on complete n-partite families

namespace detail {

inline bool is_complete_multipartite(const Network& net, const Partition& p) {
  if (!is_valid_partition(net, p)) return false;
  auto block = p.block_of(net.num_nodes());
  for (NodeId u = 0; u < net.num_nodes(); ++u)
    for (NodeId v = u + 1; v < net.num_nodes(); ++v)
      if ((block[u] != block[v]) != net.adjacent(u, v)) return false;
  return true;
}

// Demand endpoints as unordered pairs; false if any pair repeats.
inline bool unordered_demand_pairs(const Network& net, std::set<std::pair<NodeId, NodeId>>& out) {
  for (const DemandPair& d : net.demands())
    if (!out.emplace(std::min(d.source, d.sink), std::max(d.source, d.sink)).second) return false;
  return true;
}

inline bool has_family_demands(const Network& net, const Partition& p, bool all_pairs) {
  std::set<std::pair<NodeId, NodeId>> have;
  if (!unordered_demand_pairs(net, have)) return false;
  auto block = p.block_of(net.num_nodes());
  std::set<std::pair<NodeId, NodeId>> want;
  for (NodeId u = 0; u < net.num_nodes(); ++u)
    for (NodeId v = u + 1; v < net.num_nodes(); ++v)
      if (all_pairs || block[u] == block[v]) want.emplace(u, v);
  return have == want;
}

// Within-part demands split evenly over every two-hop path through the other
// parts; cross-part demands use their direct edge. Flows are built at unit
// rate and then scaled so the most loaded edge is saturated.
inline FlowAssignment uniform_two_hop_routing(const Network& net, const Partition& p) {
  if (net.num_demands() == 0) throw ValidationError("network has no demands to route");
  auto block = p.block_of(net.num_nodes());
  FlowAssignment fa = FlowAssignment::zero(net);
  for (const DemandPair& d : net.demands()) {
    auto& f = fa.flows[d.index];
    if (block[d.source] != block[d.sink]) {
      f[*arc_index(net, d.source, d.sink)] += 1;
      continue;
    }
    NodeSet relays = net.all_nodes() - p.sets[block[d.source]];
    Rational share = make_rational(1, relays.size());
    for (NodeId x : relays) {
      f[*arc_index(net, d.source, x)] += share;
      f[*arc_index(net, x, d.sink)] += share;
    }
  }
  Rational max_load = 0;
  for (int e = 0; e < net.num_edges(); ++e) max_load = std::max(max_load, fa.edge_load(e));
  fa.rate = 1 / max_load;
  for (auto& f : fa.flows)
    for (auto& x : f) x *= fa.rate;
  return fa;
}

}  // namespace detail

inline bool is_type1_network(const Network& net, const Partition& p) {
  return detail::is_complete_multipartite(net, p) && detail::has_family_demands(net, p, false);
}

inline bool is_type2_network(const Network& net, const Partition& p) {
  return detail::is_complete_multipartite(net, p) && detail::has_family_demands(net, p, true);
}

// Two-hop routing for Type-I networks. The returned rate is the largest at
// which the uniform split fits the unit capacities.
inline FlowAssignment build_type1_routing(const Network& net, const Partition& p) {
  if (!is_type1_network(net, p)) throw ValidationError("network is not Type-I for the given partition");
  return detail::uniform_two_hop_routing(net, p);
}

// Type-I routing for within-part pairs superposed with direct one-hop flow
// for cross-part pairs.
inline FlowAssignment build_type2_routing(const Network& net, const Partition& p) {
  if (!is_type2_network(net, p)) throw ValidationError("network is not Type-II for the given partition");
  return detail::uniform_two_hop_routing(net, p);
}

// ---------------------------------------------------------------------------
// Flow dump: "rate <p>/<q>" then "flow <i> <u> <v> <p>/<q>" per nonzero arc.

inline std::string write_flow_dump(const Network& net, const FlowAssignment& fa) {
  std::string out = "rate " + to_fraction_string(fa.rate) + "\n";
  for (std::size_t i = 0; i < fa.flows.size(); ++i)
    for (std::size_t a = 0; a < fa.flows[i].size(); ++a)
      if (sgn(fa.flows[i][a]) != 0)
        out += "flow " + std::to_string(i) + " " + net.label(arc_tail(net, static_cast<int>(a))) + " " +
               net.label(arc_head(net, static_cast<int>(a))) + " " + to_fraction_string(fa.flows[i][a]) + "\n";
  return out;
}

inline FlowAssignment read_flow_dump(const Network& net, std::string_view text) {
  FlowAssignment fa = FlowAssignment::zero(net);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_rate = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::tokenize_line(line);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "rate" && tok.size() == 2) {
        fa.rate = parse_rational(tok[1]);
        have_rate = true;
      } else if (tok[0] == "flow" && tok.size() == 5) {
        int i = std::stoi(tok[1]);
        if (i < 0 || i >= net.num_demands()) throw ParseError(line_no, "demand index out of range");
        auto arc = arc_index(net, net.node(tok[2]), net.node(tok[3]));
        if (!arc) throw ParseError(line_no, "no edge " + tok[2] + " " + tok[3]);
        fa.flows[i][*arc] += parse_rational(tok[4]);
      } else {
        throw ParseError(line_no, "expected 'rate <p>/<q>' or 'flow <i> <u> <v> <p>/<q>'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_rate) throw ParseError(0, "flow dump has no rate line");
  return fa;
}

}  // namespace netbound
