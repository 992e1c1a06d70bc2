#include "coreeff/graph.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "coreeff/error.hpp"
#include "coreeff/reduce.hpp"

namespace coreeff {

const TypeComponent* TypeGraph::find(const Name& skel) const {
  for (const auto& c : components)
    if (c.skeleton == skel) return &c;
  return nullptr;
}

Graphs build_graphs(const ParamContext& ctx) {
  if (!is_canonical(ctx)) fail(ErrorCode::NotCanonical, "graphs need a canonical context");
  Graphs g;
  std::map<Name, std::size_t> component_of;
  for (const auto& s : ctx.skels) g.types.components.push_back({s, {}, {}});
  for (std::size_t i = 0; i < g.types.components.size(); ++i) component_of[g.types.components[i].skeleton] = i;
  std::map<Name, std::size_t> node_component;
  for (const auto& t : ctx.types) {
    auto it = component_of.find(t.skeleton.name);
    if (it == component_of.end()) fail(ErrorCode::UnboundSkeletonParam, t.skeleton.name);
    g.types.components[it->second].nodes.push_back(t.name);
    node_component[t.name] = it->second;
  }
  for (const auto& c : ctx.type_coercions) {
    auto it = node_component.find(c.lhs.name);
    if (it == node_component.end()) fail(ErrorCode::UnboundTypeParam, c.lhs.name);
    g.types.components[it->second].edges.push_back({c.name, c.lhs.name, c.rhs.name});
  }
  g.dirts.nodes = ctx.dirts;
  for (const auto& c : ctx.dirt_coercions) g.dirts.edges.push_back({c.name, *c.lhs.tail, c.rhs.tail, c.rhs.ops});
  return g;
}

MetricsRecord metrics(const Graphs& g) {
  MetricsRecord m;
  for (const auto& c : g.types.components) {
    m.type_nodes += static_cast<int>(c.nodes.size());
    m.type_edges += static_cast<int>(c.edges.size());
  }
  m.dirt_nodes = static_cast<int>(g.dirts.nodes.size());
  m.dirt_edges = static_cast<int>(g.dirts.edges.size());
  return m;
}

namespace {

std::string polarity_mark(const FreeParamSet* f, const ParamRef& p) {
  if (!f) return "";
  const bool pos = f->is_pos(p), neg = f->is_neg(p);
  if (pos && neg) return " +-";
  if (pos) return " +";
  if (neg) return " -";
  return "";
}

std::string label_ops(const OpSet& ops) {
  if (ops.empty()) return "∅";
  std::string out = "{";
  bool first = true;
  for (const auto& op : ops) {
    if (!first) out += ",";
    out += op;
    first = false;
  }
  return out + "}";
}

const char* const kSink = "⊥";

}  // namespace

std::string to_dot(const Graphs& g, const FreeParamSet* polarity) {
  std::ostringstream os;
  os << "digraph constraints {\n";
  for (const auto& c : g.types.components) {
    for (const auto& n : c.nodes)
      os << "  \"" << n << "\" [shape=ellipse, label=\"" << n << polarity_mark(polarity, type_ref(n))
         << "\"];\n";
    for (const auto& e : c.edges)
      os << "  \"" << e.src << "\" -> \"" << e.dst << "\" [style=solid, label=\"" << e.name << "\"];\n";
  }
  bool sink_used = false;
  for (const auto& n : g.dirts.nodes)
    os << "  \"" << n << "\" [shape=box, label=\"" << n << polarity_mark(polarity, dirt_ref(n)) << "\"];\n";
  for (const auto& e : g.dirts.edges) {
    if (!e.dst) sink_used = true;
    os << "  \"" << e.src << "\" -> \"" << (e.dst ? *e.dst : kSink) << "\" [style=dashed, label=\"" << e.name
       << "/" << label_ops(e.label) << "\"];\n";
  }
  if (sink_used) os << "  \"" << kSink << "\" [shape=point];\n";
  os << "}\n";
  return os.str();
}

bool is_simple(const Graphs& g) {
  for (const auto& c : g.types.components) {
    std::set<std::pair<Name, Name>> seen;
    for (const auto& e : c.edges)
      if (e.src == e.dst || !seen.insert({e.src, e.dst}).second) return false;
  }
  std::set<std::pair<Name, std::optional<Name>>> seen;
  for (const auto& e : g.dirts.edges) {
    if (e.dst && *e.dst == e.src) return false;
    if (!seen.insert({e.src, e.dst}).second) return false;
  }
  return true;
}

namespace {

bool acyclic(const std::vector<Name>& nodes, const std::vector<std::pair<Name, Name>>& edges) {
  std::map<Name, std::vector<Name>> succ;
  for (const auto& [a, b] : edges) succ[a].push_back(b);
  std::map<Name, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(const Name&)> visit = [&](const Name& n) {
    state[n] = 1;
    for (const auto& m : succ[n]) {
      if (state[m] == 1) return false;
      if (state[m] == 0 && !visit(m)) return false;
    }
    state[n] = 2;
    return true;
  };
  for (const auto& n : nodes)
    if (state[n] == 0 && !visit(n)) return false;
  return true;
}

}  // namespace

bool types_acyclic(const Graphs& g) {
  for (const auto& c : g.types.components) {
    std::vector<std::pair<Name, Name>> edges;
    for (const auto& e : c.edges) edges.push_back({e.src, e.dst});
    if (!acyclic(c.nodes, edges)) return false;
  }
  return true;
}

bool empty_dirt_edges_acyclic(const Graphs& g) {
  std::vector<std::pair<Name, Name>> edges;
  for (const auto& e : g.dirts.edges)
    if (e.dst && e.label.empty()) edges.push_back({e.src, *e.dst});
  return acyclic(g.dirts.nodes, edges);
}

}  // namespace coreeff
