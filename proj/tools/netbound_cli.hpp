#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netbound/netbound.hpp"

namespace netbound::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kLimitExceeded = 3,
  kSoundness = 4,
};

// Human-readable lines followed by sorted key=value lines.
class Report {
 public:
  explicit Report(bool decimal) : decimal_(decimal) {}

  void line(std::string text) { text_.push_back(std::move(text)); }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void set(const std::string& key, const char* value) { values_[key] = value; }
  void set(const std::string& key, int value) { values_[key] = std::to_string(value); }
  void set(const std::string& key, bool value) { values_[key] = value ? "true" : "false"; }
  void set_rational(const std::string& key, const Rational& r) {
    values_[key] = to_fraction_string(r);
    if (decimal_) values_[key + ".decimal"] = to_decimal_string(r);
  }

  std::string number(const Rational& r) const {
    return decimal_ ? to_fraction_string(r) + " (" + to_decimal_string(r) + ")" : to_fraction_string(r);
  }

  void print(std::ostream& out) const {
    for (const auto& t : text_) out << t << "\n";
    if (!text_.empty()) out << "\n";
    for (const auto& [k, v] : values_) out << k << "=" << v << "\n";
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  bool decimal_;
  std::vector<std::string> text_;
  std::map<std::string, std::string> values_;
};

// Raised when a computed routing rate exceeds a computed upper bound, or a
// routing fails verification.
class SoundnessFlag : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline PartSizes parse_sizes(const std::string& text) {
  PartSizes sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad part size list '" + text + "'");
    }
  }
  validate_part_sizes(sizes);
  return sizes;
}

struct RandomParams {
  int nodes = 6;
  double edge_prob = 0.5;
  int demands = 3;
  std::uint64_t seed = 1;
};

inline Network generate(const std::string& family, const std::string& sizes, const RandomParams& rp) {
  if (family == "hu") return gen_hu();
  if (family == "random") return gen_random(rp.nodes, rp.edge_prob, rp.demands, rp.seed);
  if (family == "npartite") return gen_complete_npartite(parse_sizes(sizes)).network;
  if (family == "type1") return gen_type1(parse_sizes(sizes)).network;
  if (family == "type2") return gen_type2(parse_sizes(sizes)).network;
  throw ValidationError("unknown generator family '" + family + "'");
}

// An instance path, or a generator spec:
//   gen:hu | gen:npartite:3,2 | gen:type1:3,2 | gen:type2:3,2
//   gen:random:<nodes>:<edge_prob>:<demands>:<seed>
inline Network load_input(const std::string& input) {
  if (input.rfind("gen:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream in(input.substr(4));
    for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    if (parts.empty()) throw ValidationError("empty generator spec");
    if (parts[0] == "random") {
      if (parts.size() != 5) throw ValidationError("expected gen:random:<nodes>:<edge_prob>:<demands>:<seed>");
      RandomParams rp;
      try {
        rp.nodes = std::stoi(parts[1]);
        rp.edge_prob = std::stod(parts[2]);
        rp.demands = std::stoi(parts[3]);
        rp.seed = std::stoull(parts[4]);
      } catch (const std::exception&) {
        throw ValidationError("bad random generator parameters in '" + input + "'");
      }
      return generate("random", "", rp);
    }
    return generate(parts[0], parts.size() > 1 ? parts[1] : "", RandomParams{});
  }
  std::ifstream file(input);
  if (!file) throw ValidationError("cannot read instance file '" + input + "'");
  return parse_network(file);
}

inline void summarize(const Network& net, Report& r) {
  r.line("instance: |V|=" + std::to_string(net.num_nodes()) + " |E|=" + std::to_string(net.num_edges()) +
         " |I|=" + std::to_string(net.num_demands()));
  r.set("instance.demands", net.num_demands());
  r.set("instance.edges", net.num_edges());
  r.set("instance.nodes", net.num_nodes());
}

inline std::string describe_witness(const Network& net, const BoundReport& b) {
  return std::visit(
      [&](const auto& w) -> std::string {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Partition>) return render_partition(net, w);
        else if constexpr (std::is_same_v<W, CutWitness>) return render_node_set(net, w.side);
        else return render_partition(net, w.partition);
      },
      b.witness);
}

inline void add_bound(const Network& net, const BoundReport& b, Report& r) {
  const std::string key = std::string("bound.") + to_string(b.kind);
  r.set_rational(key, b.value);
  r.set(key + ".witness", describe_witness(net, b));
  std::string text = std::string(to_string(b.kind)) + " bound: " + r.number(b.value) + "  witness " +
                     describe_witness(net, b);
  if (const auto* t = std::get_if<TightenedWitness>(&b.witness)) {
    r.set(key + ".separated", render_index_set(t->separated));
    r.set(key + ".fallback", b.fell_back);
    text += "  separated " + render_index_set(t->separated);
    if (b.fell_back) text += "  (no 3-partition improves on the partition bound)";
  }
  r.line(text);
}

struct BoundOptions {
  bool partition = false;
  bool sparsity = false;
  bool tightened3 = false;
  bool all = false;
  std::string with_partition;
};

inline Report cmd_bound(const std::string& input, const BoundOptions& opt, const Limits& limits, bool decimal) {
  Network net = load_input(input);
  Report r(decimal);
  summarize(net, r);
  const bool none = !opt.partition && !opt.sparsity && !opt.tightened3 && opt.with_partition.empty();
  const bool all = opt.all || none;
  if (!opt.with_partition.empty()) {
    std::ifstream file(opt.with_partition);
    if (!file) throw ValidationError("cannot read partition file '" + opt.with_partition + "'");
    add_bound(net, partition_bound_given(net, parse_partition(net, file)), r);
  }
  if (all || (opt.partition && opt.with_partition.empty())) add_bound(net, partition_bound(net, limits), r);
  if (all || opt.sparsity) add_bound(net, sparsity_bound(net, limits), r);
  if (all || opt.tightened3) add_bound(net, tightened3_bound(net, limits), r);
  return r;
}

inline void add_opt(const Network& net, const std::string& name, const OptResult& o, Report& r) {
  const std::string key = "opt." + name;
  r.set(key, o.value);
  r.set(key + ".selected", render_index_set(o.selected));
  std::string text = name + ": " + std::to_string(o.value) + "  selected " + render_index_set(o.selected);
  if (o.witness) {
    r.set(key + ".witness", render_partition(net, *o.witness));
    text += "  witness " + render_partition(net, *o.witness);
  }
  r.line(text);
}

inline Report cmd_opt(const std::string& input, const std::string& method, const Limits& limits, bool decimal) {
  Network net = load_input(input);
  Report r(decimal);
  summarize(net, r);
  r.set("opt.reducible", render_index_set(reducible_pairs(net)));
  if (method == "oracle") {
    add_opt(net, "oracle", opt_oracle(net, limits), r);
  } else if (method == "enum") {
    add_opt(net, "enum", opt_partition_enumeration(net, limits), r);
  } else if (method == "recursive-paper") {
    add_opt(net, "recursive-paper", opt_recursive(net, ConflictVariant::paper, limits), r);
  } else if (method == "recursive-symmetrized") {
    add_opt(net, "recursive-symmetrized", opt_recursive(net, ConflictVariant::symmetrized, limits), r);
  } else if (method == "compare") {
    OptComparison c = compare_opt_methods(net, limits);
    add_opt(net, "oracle", c.oracle, r);
    if (c.enumeration) add_opt(net, "enum", *c.enumeration, r);
    add_opt(net, "recursive-paper", c.recursive_paper, r);
    add_opt(net, "recursive-symmetrized", c.recursive_symmetrized, r);
    auto flag = [&](const std::string& name, const OptResult& other) {
      if (other.value == c.oracle.value) return;
      std::string msg = name + " gives " + std::to_string(other.value) + ", oracle gives " +
                        std::to_string(c.oracle.value);
      r.set("opt.compare.discrepancy." + name, msg);
      r.line("DISCREPANCY: " + msg);
    };
    if (c.enumeration) flag("enum", *c.enumeration);
    flag("recursive-paper", c.recursive_paper);
    flag("recursive-symmetrized", c.recursive_symmetrized);
    r.set("opt.compare.agree", c.all_agree());
    if (c.all_agree()) r.line("all methods agree");
  } else {
    throw ValidationError("unknown opt method '" + method + "'");
  }
  return r;
}

inline ConcurrentFlow verified_flow(const Network& net, const Limits& limits) {
  ConcurrentFlow flow = max_concurrent_flow(net, limits);
  RoutingCheck check = verify_routing(net, flow.assignment);
  if (!check) throw SoundnessFlag("LP routing failed verification: " + check.violations.front());
  return flow;
}

inline Report cmd_flow(const std::string& input, const std::string& dump, const Limits& limits, bool decimal) {
  Network net = load_input(input);
  Report r(decimal);
  summarize(net, r);
  ConcurrentFlow flow = verified_flow(net, limits);
  r.line("max concurrent flow rate: " + r.number(flow.assignment.rate) + " (verified; LP " +
         std::to_string(flow.certificate.variables) + " variables, " + std::to_string(flow.certificate.constraints) +
         " rows, " + std::to_string(flow.certificate.pivots) + " pivots)");
  r.set_rational("flow.rate", flow.assignment.rate);
  r.set("flow.verified", true);
  r.set("flow.lp.variables", flow.certificate.variables);
  r.set("flow.lp.constraints", flow.certificate.constraints);
  r.set("flow.lp.pivots", flow.certificate.pivots);
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw ValidationError("cannot write flow dump '" + dump + "'");
    out << write_flow_dump(net, flow.assignment);
    r.set("flow.dump", dump);
  }
  return r;
}

inline Report cmd_check(const std::string& input, const Limits& limits, bool decimal) {
  Network net = load_input(input);
  Report r(decimal);
  summarize(net, r);
  ConcurrentFlow flow = verified_flow(net, limits);
  const Rational& rate = flow.assignment.rate;
  std::vector<BoundReport> bounds{partition_bound(net, limits), sparsity_bound(net, limits),
                                  tightened3_bound(net, limits)};
  r.set_rational("check.flow", rate);
  r.line("routing rate: " + r.number(rate));
  Rational min_bound = bounds.front().value;
  std::vector<std::string> violated;
  for (const auto& b : bounds) {
    const std::string name = to_string(b.kind);
    min_bound = std::min(min_bound, b.value);
    Rational gap = b.value - rate;
    r.set_rational("check.bound." + name, b.value);
    r.set_rational("check.gap." + name, gap);
    r.line(name + " bound: " + r.number(b.value) + "  gap " + r.number(gap));
    if (rate > b.value) violated.push_back(name);
  }
  Rational gap = min_bound - rate;
  r.set_rational("check.min_bound", min_bound);
  r.set_rational("check.gap", gap);
  const bool tight = sgn(gap) == 0;
  r.set("check.status", std::string(tight ? "tight" : "gap"));
  r.line(tight ? "tight: routing attains the best bound " + r.number(min_bound)
               : "gap: best bound " + r.number(min_bound) + " exceeds routing rate by " + r.number(gap));
  r.set("check.soundness", std::string(violated.empty() ? "ok" : "VIOLATED"));
  if (!violated.empty()) {
    std::string names;
    for (const auto& v : violated) names += (names.empty() ? "" : ",") + v;
    r.line("SOUNDNESS: routing rate exceeds bound(s) " + names);
  }
  return r;
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper bounds and routing rates for undirected unicast networks"};
  app.require_subcommand(1);
  app.fallthrough();
  bool decimal = false;
  std::string limits_spec;
  app.add_flag("--decimal", decimal, "Append 6-digit decimal approximations");
  app.add_option("--limits", limits_spec, "Size limits, e.g. cut_nodes=20,reducible_pairs=20 (overrides NETBOUND_LIMITS)");

  std::string input;
  BoundOptions bound_opt;
  auto* bound = app.add_subcommand("bound", "Compute upper bounds on the symmetric rate");
  bound->add_flag("--partition", bound_opt.partition, "Partition bound (optimal partition)");
  bound->add_flag("--sparsity", bound_opt.sparsity, "Sparsest-cut bound");
  bound->add_flag("--tightened3", bound_opt.tightened3, "Tightened 3-partition bound");
  bound->add_flag("--all", bound_opt.all, "All bounds (default)");
  bound->add_option("--with-partition", bound_opt.with_partition, "Evaluate the partition bound at this partition file");
  bound->add_option("input", input, "Instance file or gen:<family>[:params]")->required();

  std::string method = "oracle";
  auto* opt = app.add_subcommand("opt", "Maximum number of co-locatable demands");
  opt->add_option("--method", method, "oracle|enum|recursive-paper|recursive-symmetrized|compare")
      ->check(CLI::IsMember({"oracle", "enum", "recursive-paper", "recursive-symmetrized", "compare"}));
  opt->add_option("input", input, "Instance file or generator spec")->required();

  std::string dump;
  auto* flow = app.add_subcommand("flow", "Exact maximum concurrent multicommodity flow");
  flow->add_option("--dump", dump, "Write per-demand arc flows to this file");
  flow->add_option("input", input, "Instance file or generator spec")->required();

  std::string family, sizes, output;
  RandomParams rp;
  auto* gen = app.add_subcommand("gen", "Write a generated instance in canonical form");
  gen->add_option("family", family, "npartite|type1|type2|hu|random")
      ->required()
      ->check(CLI::IsMember({"npartite", "type1", "type2", "hu", "random"}));
  gen->add_option("--sizes", sizes, "Part sizes, e.g. 3,2");
  gen->add_option("--nodes", rp.nodes, "random: node count");
  gen->add_option("--edge-prob", rp.edge_prob, "random: edge probability");
  gen->add_option("--demands", rp.demands, "random: demand count");
  gen->add_option("--seed", rp.seed, "random: seed");
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Compare routing rate with every bound");
  check->add_option("input", input, "Instance file or generator spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Limits limits = Limits::from_environment();
    if (!limits_spec.empty()) limits = Limits::parse(limits_spec, limits);
    if (*gen) {
      if (family != "hu" && family != "random" && sizes.empty())
        throw ValidationError("--sizes is required for family '" + family + "'");
      Network net = generate(family, sizes, rp);
      if (net.num_demands() == 0 && family != "npartite")
        err << "warning: generated instance has no demands; bounds are undefined\n";
      std::string text = render_network(net);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream file(output);
        if (!file) throw ValidationError("cannot write '" + output + "'");
        file << text;
      }
      return kOk;
    }
    Report report(decimal);
    if (*bound) report = cmd_bound(input, bound_opt, limits, decimal);
    else if (*opt) report = cmd_opt(input, method, limits, decimal);
    else if (*flow) report = cmd_flow(input, dump, limits, decimal);
    else if (*check) report = cmd_check(input, limits, decimal);
    report.print(out);
    auto soundness = report.values().find("check.soundness");
    if (soundness != report.values().end() && soundness->second != "ok") return kSoundness;
    return kOk;
  } catch (const LimitExceeded& e) {
    err << "error: size limit exceeded: " << e.what() << "\n";
    return kLimitExceeded;
  } catch (const SoundnessFlag& e) {
    err << "SOUNDNESS: " << e.what() << "\n";
    return kSoundness;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kSoundness;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace netbound::cli
