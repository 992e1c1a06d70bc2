#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coreeff/polarity.hpp"
#include "coreeff/syntax.hpp"

namespace coreeff {

struct TypeEdge {
  Name name, src, dst;
  friend bool operator==(const TypeEdge&, const TypeEdge&) = default;
};

struct TypeComponent {
  Name skeleton;
  std::vector<Name> nodes;
  std::vector<TypeEdge> edges;
};

struct TypeGraph {
  std::vector<TypeComponent> components;  // in skeleton-parameter order
  const TypeComponent* find(const Name& skel) const;
};

struct DirtEdge {
  Name name, src;
  std::optional<Name> dst;  // nullopt is the sink
  OpSet label;
  friend bool operator==(const DirtEdge&, const DirtEdge&) = default;
};

struct DirtGraph {
  std::vector<Name> nodes;  // the sink is implicit
  std::vector<DirtEdge> edges;
};

struct Graphs {
  TypeGraph types;
  DirtGraph dirts;
};

Graphs build_graphs(const ParamContext& ctx);

struct MetricsRecord {
  int dirt_nodes = 0, dirt_edges = 0, type_nodes = 0, type_edges = 0;
  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

MetricsRecord metrics(const Graphs& g);

std::string to_dot(const Graphs& g, const FreeParamSet* polarity = nullptr);

// Graph predicates used as phase postconditions.
bool is_simple(const Graphs& g);
bool types_acyclic(const Graphs& g);
bool empty_dirt_edges_acyclic(const Graphs& g);

}  // namespace coreeff
