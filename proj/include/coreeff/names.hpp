#pragma once

#include <map>
#include <set>
#include <string>

#include "coreeff/syntax.hpp"

namespace coreeff {

// Deterministic fresh names: prefix followed by the next unused counter value.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const ParamContext& ctx) { reserve(ctx); }

  void reserve(const Name& n) { used_.insert(n); }
  void reserve(const ParamContext& ctx) {
    auto names = ctx.all_names();
    used_.insert(names.begin(), names.end());
  }

  Name fresh(const std::string& prefix) {
    int& next = counters_[prefix];
    for (;;) {
      Name candidate = prefix + std::to_string(++next);
      if (used_.insert(candidate).second) return candidate;
    }
  }

  Name fresh_type() { return fresh("_a"); }
  Name fresh_dirt() { return fresh("_d"); }
  Name fresh_type_coercion() { return fresh("_w"); }
  Name fresh_dirt_coercion() { return fresh("_p"); }

 private:
  std::set<Name> used_;
  std::map<std::string, int> counters_;
};

}  // namespace coreeff
