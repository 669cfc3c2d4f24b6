#pragma once

#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>

#include "netbound/errors.hpp"

namespace netbound {

// Size limits for the exponential and LP-based operations.
struct Limits {
  int partition_nodes = 16;    // 3-partition enumeration (tightened bound)
  int cut_nodes = 20;          // sparsest-cut enumeration over 2^|V| subsets
  int enumeration_nodes = 10;  // Bell-number partition enumeration
  int reducible_pairs = 20;    // |Î| for the oracle and the recurrences
  int lp_variables = 5000;

  // Overrides from a "key=value,key=value" string, e.g. the NETBOUND_LIMITS
  // environment variable.
  static Limits parse(std::string_view spec) { return parse(spec, Limits{}); }

  static Limits parse(std::string_view spec, Limits base) {
    std::stringstream in{std::string(spec)};
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("bad limit entry '" + item + "'");
      std::string key = item.substr(0, eq);
      int value = 0;
      try {
        value = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ValidationError("bad limit value in '" + item + "'");
      }
      if (value <= 0) throw ValidationError("limit must be positive in '" + item + "'");
      if (key == "partition_nodes") base.partition_nodes = value;
      else if (key == "cut_nodes") base.cut_nodes = value;
      else if (key == "enumeration_nodes") base.enumeration_nodes = value;
      else if (key == "reducible_pairs") base.reducible_pairs = value;
      else if (key == "lp_variables") base.lp_variables = value;
      else throw ValidationError("unknown limit '" + key + "'");
    }
    return base;
  }

  static Limits from_environment() {
    const char* env = std::getenv("NETBOUND_LIMITS");
    return env ? parse(env) : Limits{};
  }
};

}  // namespace netbound
