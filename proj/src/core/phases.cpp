#include "coreeff/phases.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"

namespace coreeff {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Reduce:
      return "reduce";
    case StepKind::LoopPar:
      return "loop_par";
    case StepKind::Scc:
      return "scc";
    case StepKind::BridgeIn:
      return "bridge_in";
    case StepKind::BridgeOut:
      return "bridge_out";
    case StepKind::EmptyDirt:
      return "empty_dirt";
    case StepKind::FullDirt:
      return "full_dirt";
  }
  return "?";
}

PhaseResult identity_result(const ParamContext& ctx) { return {ctx, {}, {}}; }

namespace {

bool wants_types(Target t) { return t != Target::Dirts; }
bool wants_dirts(Target t) { return t != Target::Types; }

PhaseResult single_step(Step st) {
  PhaseResult r{st.after, st.subst, {}};
  r.trace.push_back(std::move(st));
  return r;
}

Step make_step(StepKind kind, const ParamContext& before, Substitution s, const FreeParamSet& f) {
  Step st;
  st.kind = kind;
  st.before = before;
  st.after = apply(s, before);
  st.subst = std::move(s);
  st.polarity = f;
  return st;
}

OpSet minus(const OpSet& a, const OpSet& b) {
  OpSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

OpSet intersect(const OpSet& a, const OpSet& b) {
  OpSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool includes(const OpSet& big, const OpSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Tarjan's algorithm; components come out in reverse topological order.
std::vector<std::vector<Name>> strongly_connected(const std::vector<Name>& nodes,
                                                  const std::vector<std::pair<Name, Name>>& edges) {
  std::map<Name, std::vector<Name>> succ;
  for (const auto& [a, b] : edges) succ[a].push_back(b);
  std::map<Name, int> index, low;
  std::map<Name, bool> on_stack;
  std::vector<Name> stack;
  std::vector<std::vector<Name>> out;
  int counter = 0;
  std::function<void(const Name&)> visit = [&](const Name& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& w : succ[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<Name> comp;
      Name w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      out.push_back(std::move(comp));
    }
  };
  for (const auto& n : nodes)
    if (!index.count(n)) visit(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- loops and parallel edges

PhaseResult phase_loop_par(const Signature&, const ParamContext& ctx, const FreeParamSet& f, Target target,
                           NameSupply* names) {
  NameSupply local(ctx);
  if (names) names->reserve(ctx);
  NameSupply& supply = names ? *names : local;

  Substitution s;
  ParamContext after = ctx;
  if (wants_types(target)) {
    after.type_coercions.clear();
    std::map<std::pair<Name, Name>, Name> first;
    for (const auto& c : ctx.type_coercions) {
      if (c.lhs == c.rhs) {
        s.tycos[c.name] = ValueCoercion::refl_param(c.lhs.name);
        continue;
      }
      auto [it, fresh] = first.emplace(std::make_pair(c.lhs.name, c.rhs.name), c.name);
      if (!fresh) {
        s.tycos[c.name] = ValueCoercion::param(it->second);
        continue;
      }
      after.type_coercions.push_back(c);
    }
  }
  if (wants_dirts(target)) {
    after.dirt_coercions.clear();
    using Key = std::pair<Name, std::optional<Name>>;
    std::map<Key, std::vector<const DirtCoercionDecl*>> groups;
    for (const auto& c : ctx.dirt_coercions) {
      if (c.rhs.tail && *c.rhs.tail == *c.lhs.tail) continue;
      groups[{*c.lhs.tail, c.rhs.tail}].push_back(&c);
    }
    for (const auto& c : ctx.dirt_coercions) {
      if (c.rhs.tail && *c.rhs.tail == *c.lhs.tail) {
        s.dircos[c.name] = union_right(c.rhs.ops, DirtCoercion::refl_param(*c.lhs.tail));
        continue;
      }
      const auto& group = groups[{*c.lhs.tail, c.rhs.tail}];
      if (group.size() == 1) {
        after.dirt_coercions.push_back(c);
        continue;
      }
      if (group.front() != &c) continue;  // merged with the first member below
      OpSet common = group.front()->rhs.ops;
      for (const auto* g : group) common = intersect(common, g->rhs.ops);
      Name merged = supply.fresh_dirt_coercion();
      Dirt rhs = c.rhs.tail ? Dirt::open(common, *c.rhs.tail) : Dirt::closed(common);
      after.dirt_coercions.push_back({merged, c.lhs, rhs});
      for (const auto* g : group)
        s.dircos[g->name] = union_right(minus(g->rhs.ops, common), DirtCoercion::param(merged));
    }
  }
  if (s.empty()) return identity_result(ctx);
  Step st;
  st.kind = StepKind::LoopPar;
  st.before = ctx;
  st.after = std::move(after);
  st.subst = std::move(s);
  st.polarity = f;
  return single_step(std::move(st));
}

// ---------------------------------------------------------------- cycles

PhaseResult phase_scc(const Signature&, const ParamContext& ctx, const FreeParamSet& f, Target target) {
  Substitution s;
  auto position = [](const auto& list, const Name& n, auto key) {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (key(list[i]) == n) return i;
    return list.size();
  };
  if (wants_types(target)) {
    for (const auto& skel : ctx.skels) {
      std::vector<Name> nodes;
      for (const auto& t : ctx.types)
        if (t.skeleton.kind == Skeleton::Kind::Param && t.skeleton.name == skel) nodes.push_back(t.name);
      std::vector<std::pair<Name, Name>> edges;
      for (const auto& c : ctx.type_coercions)
        if (c.lhs.is_param() && c.rhs.is_param()) edges.push_back({c.lhs.name, c.rhs.name});
      for (auto& comp : strongly_connected(nodes, edges)) {
        if (comp.size() < 2) continue;
        auto key = [](const TypeParamDecl& t) { return t.name; };
        std::sort(comp.begin(), comp.end(), [&](const Name& a, const Name& b) {
          return position(ctx.types, a, key) < position(ctx.types, b, key);
        });
        const Name& rep = comp.front();
        std::set<Name> members(comp.begin(), comp.end());
        for (std::size_t i = 1; i < comp.size(); ++i) s.types[comp[i]] = ValueType::param(rep);
        for (const auto& c : ctx.type_coercions)
          if (members.count(c.lhs.name) && members.count(c.rhs.name))
            s.tycos[c.name] = ValueCoercion::refl_param(rep);
      }
    }
  }
  if (wants_dirts(target)) {
    std::vector<std::pair<Name, Name>> edges;
    for (const auto& c : ctx.dirt_coercions)
      if (c.rhs.ops.empty() && c.rhs.tail) edges.push_back({*c.lhs.tail, *c.rhs.tail});
    for (auto& comp : strongly_connected(ctx.dirts, edges)) {
      if (comp.size() < 2) continue;
      auto key = [](const Name& d) { return d; };
      std::sort(comp.begin(), comp.end(), [&](const Name& a, const Name& b) {
        return position(ctx.dirts, a, key) < position(ctx.dirts, b, key);
      });
      const Name& rep = comp.front();
      std::set<Name> members(comp.begin(), comp.end());
      for (std::size_t i = 1; i < comp.size(); ++i) s.dirts[comp[i]] = Dirt::param(rep);
      for (const auto& c : ctx.dirt_coercions)
        if (c.rhs.ops.empty() && c.rhs.tail && members.count(*c.lhs.tail) && members.count(*c.rhs.tail))
          s.dircos[c.name] = DirtCoercion::refl_param(rep);
    }
  }
  if (s.empty()) return identity_result(ctx);
  return single_step(make_step(StepKind::Scc, ctx, std::move(s), f));
}

// ---------------------------------------------------------------- bridges

namespace {

std::optional<Step> find_type_bridge(const ParamContext& ctx, const FreeParamSet& f, bool in) {
  for (const auto& t : ctx.types) {
    const Name& a = t.name;
    if (in ? f.is_neg(type_ref(a)) : f.is_pos(type_ref(a))) continue;
    const TypeCoercionDecl* only = nullptr;
    int count = 0;
    for (const auto& c : ctx.type_coercions)
      if ((in ? c.rhs : c.lhs).is_param() && (in ? c.rhs : c.lhs).name == a) {
        ++count;
        only = &c;
      }
    if (count != 1) continue;
    const Name& other = (in ? only->lhs : only->rhs).name;
    if (other == a) continue;
    Substitution s;
    s.types[a] = ValueType::param(other);
    s.tycos[only->name] = ValueCoercion::refl_param(other);
    Step st = make_step(in ? StepKind::BridgeIn : StepKind::BridgeOut, ctx, std::move(s), f);
    st.sort = ParamSort::Type;
    st.removed = a;
    st.kept = other;
    st.edge = only->name;
    return st;
  }
  return std::nullopt;
}

std::optional<Step> find_dirt_bridge(const ParamContext& ctx, const FreeParamSet& f, bool in) {
  for (const auto& d : ctx.dirts) {
    if (in ? f.is_neg(dirt_ref(d)) : f.is_pos(dirt_ref(d))) continue;
    const DirtCoercionDecl* only = nullptr;
    int count = 0;
    for (const auto& c : ctx.dirt_coercions) {
      const bool touches = in ? (c.rhs.tail && *c.rhs.tail == d) : (*c.lhs.tail == d);
      if (touches) {
        ++count;
        only = &c;
      }
    }
    if (count != 1) continue;
    Substitution s;
    Step st;
    if (in) {
      // Merging into the source needs an unlabelled edge.
      if (!only->rhs.ops.empty() || *only->lhs.tail == d) continue;
      s.dirts[d] = Dirt::param(*only->lhs.tail);
      s.dircos[only->name] = DirtCoercion::refl_param(*only->lhs.tail);
      st = make_step(StepKind::BridgeIn, ctx, std::move(s), f);
      st.kept = *only->lhs.tail;
    } else {
      if (only->rhs.tail && *only->rhs.tail == d) continue;
      s.dirts[d] = only->rhs;
      s.dircos[only->name] = derived_refl(only->rhs);
      st = make_step(StepKind::BridgeOut, ctx, std::move(s), f);
      st.kept = only->rhs.tail.value_or("");
    }
    st.sort = ParamSort::Dirt;
    st.removed = d;
    st.edge = only->name;
    return st;
  }
  return std::nullopt;
}

PhaseResult bridge_fixpoint(const ParamContext& ctx, const FreeParamSet& f, Target target, bool in,
                            bool out) {
  PhaseResult r = identity_result(ctx);
  FreeParamSet cur = f;
  for (;;) {
    std::optional<Step> st;
    if (wants_types(target) && in) st = find_type_bridge(r.context, cur, true);
    if (!st && wants_types(target) && out) st = find_type_bridge(r.context, cur, false);
    if (!st && wants_dirts(target) && in) st = find_dirt_bridge(r.context, cur, true);
    if (!st && wants_dirts(target) && out) st = find_dirt_bridge(r.context, cur, false);
    if (!st) return r;
    cur = subst_fps(st->subst, cur);
    r = compose_phase_results(single_step(std::move(*st)), r);
  }
}

}  // namespace

PhaseResult phase_bridge(const Signature&, const ParamContext& ctx, const FreeParamSet& f, Target target) {
  return bridge_fixpoint(ctx, f, target, true, true);
}

PhaseResult phase_bridge_in(const Signature&, const ParamContext& ctx, const FreeParamSet& f, Target target) {
  return bridge_fixpoint(ctx, f, target, true, false);
}

PhaseResult phase_bridge_out(const Signature&, const ParamContext& ctx, const FreeParamSet& f, Target target) {
  return bridge_fixpoint(ctx, f, target, false, true);
}

// ---------------------------------------------------------------- empty and full dirts

PhaseResult phase_empty_dirt(const Signature&, const ParamContext& ctx, const FreeParamSet& f) {
  std::set<Name> d;
  for (const auto& n : ctx.dirts)
    if (!f.is_neg(dirt_ref(n))) d.insert(n);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : ctx.dirt_coercions)
      if (c.rhs.tail && d.count(*c.rhs.tail) && !d.count(*c.lhs.tail)) {
        d.erase(*c.rhs.tail);
        changed = true;
      }
  }
  if (d.empty()) return identity_result(ctx);
  Substitution s;
  for (const auto& n : d) s.dirts[n] = Dirt::empty();
  for (const auto& c : ctx.dirt_coercions)
    if (d.count(*c.lhs.tail)) s.dircos[c.name] = derived_empty(apply(s, c.rhs));
  Step st = make_step(StepKind::EmptyDirt, ctx, std::move(s), f);
  st.sort = ParamSort::Dirt;
  st.dirt_set = d;
  return single_step(std::move(st));
}

PhaseResult phase_full_dirt(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f) {
  const OpSet all = sig.all_ops();
  std::set<Name> d;
  for (const auto& n : ctx.dirts)
    if (!f.is_pos(dirt_ref(n))) d.insert(n);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : ctx.dirt_coercions) {
      if (!d.count(*c.lhs.tail) || includes(c.rhs.ops, all)) continue;
      if (c.rhs.tail && d.count(*c.rhs.tail)) continue;
      d.erase(*c.lhs.tail);
      changed = true;
    }
  }
  if (d.empty()) return identity_result(ctx);
  Substitution s;
  for (const auto& n : d) s.dirts[n] = Dirt::closed(all);
  for (const auto& c : ctx.dirt_coercions) {
    if (!d.count(*c.lhs.tail)) continue;
    auto g = synthesize_coercion(Dirt::closed(all), apply(s, c.rhs));
    if (!g) fail(ErrorCode::Internal, "full dirt edge " + c.name + " has no witness");
    s.dircos[c.name] = *g;
  }
  Step st = make_step(StepKind::FullDirt, ctx, std::move(s), f);
  st.sort = ParamSort::Dirt;
  st.dirt_set = d;
  return single_step(std::move(st));
}

PhaseResult compose_phase_results(const PhaseResult& r2, const PhaseResult& r1) {
  PhaseResult out;
  out.context = r2.context;
  out.subst = compose(r2.subst, r1.subst);
  out.trace = r1.trace;
  out.trace.insert(out.trace.end(), r2.trace.begin(), r2.trace.end());
  return out;
}

// ---------------------------------------------------------------- pipeline

PipelineConfig PipelineConfig::parse(const std::string& spec, bool full_dirt) {
  PipelineConfig c;
  c.name = spec;
  if (spec == "none") {
    c.loop_par = c.scc = c.bridge = c.empty_dirt = false;
  } else if (spec == "scc") {
    c.bridge = c.empty_dirt = false;
  } else if (spec == "dirt") {
    c.target = Target::Dirts;
  } else if (spec == "type") {
    c.target = Target::Types;
    c.empty_dirt = false;
  } else if (spec == "all") {
  } else if (spec.rfind("custom:", 0) == 0) {
    c.loop_par = c.scc = c.bridge = c.empty_dirt = false;
    std::stringstream list(spec.substr(7));
    std::string item;
    static const std::set<std::string> known = {"loop_par", "scc",        "bridge",   "bridge_in",
                                                "bridge_out", "empty_dirt", "full_dirt"};
    while (std::getline(list, item, ',')) {
      if (item.empty()) continue;
      if (!known.count(item)) fail(ErrorCode::InvalidArgument, "unknown phase '" + item + "'");
      c.custom_order.push_back(item);
    }
    if (c.custom_order.empty()) fail(ErrorCode::InvalidArgument, "custom pipeline lists no phases");
  } else {
    fail(ErrorCode::InvalidArgument, "unknown pipeline '" + spec + "'");
  }
  if (full_dirt) {
    c.full_dirt = true;
    if (!c.custom_order.empty()) c.custom_order.push_back("full_dirt");
  }
  return c;
}

bool PipelineConfig::any() const {
  return loop_par || scc || bridge || bridge_in || bridge_out || empty_dirt || full_dirt || !custom_order.empty();
}

PhaseResult run_pipeline(const Signature& sig, const ParamContext& ctx, const FreeParamSet& f,
                         const PipelineConfig& config, NameSupply* names) {
  NameSupply local(ctx);
  NameSupply& supply = names ? *names : local;
  supply.reserve(ctx);

  std::vector<std::string> order = config.custom_order;
  if (order.empty()) {
    auto add = [&](bool on, const char* phase) {
      if (!on) return;
      if (config.loop_par && !order.empty() && order.back() != "loop_par") order.push_back("loop_par");
      if (config.loop_par && order.empty() && std::string(phase) != "loop_par") order.push_back("loop_par");
      order.push_back(phase);
    };
    add(config.loop_par, "loop_par");
    add(config.scc, "scc");
    add(config.bridge, "bridge");
    add(config.bridge_in, "bridge_in");
    add(config.bridge_out, "bridge_out");
    add(config.empty_dirt && config.target != Target::Types, "empty_dirt");
    add(config.full_dirt && config.target != Target::Types, "full_dirt");
    if (config.loop_par && !order.empty() && order.back() != "loop_par") order.push_back("loop_par");
  }

  PhaseResult total = identity_result(ctx);
  FreeParamSet cur = f;
  const std::size_t fuel = 64 + 16 * ctx.all_names().size();
  for (std::size_t round = 0;; ++round) {
    if (round > fuel) fail(ErrorCode::Internal, "pipeline did not reach a fixpoint");
    bool changed = false;
    for (const auto& phase : order) {
      PhaseResult r;
      const ParamContext& c = total.context;
      if (phase == "loop_par")
        r = phase_loop_par(sig, c, cur, config.target, &supply);
      else if (phase == "scc")
        r = phase_scc(sig, c, cur, config.target);
      else if (phase == "bridge")
        r = phase_bridge(sig, c, cur, config.target);
      else if (phase == "bridge_in")
        r = phase_bridge_in(sig, c, cur, config.target);
      else if (phase == "bridge_out")
        r = phase_bridge_out(sig, c, cur, config.target);
      else if (phase == "empty_dirt")
        r = config.target == Target::Types ? identity_result(c) : phase_empty_dirt(sig, c, cur);
      else if (phase == "full_dirt")
        r = config.target == Target::Types ? identity_result(c) : phase_full_dirt(sig, c, cur);
      if (r.trace.empty()) continue;
      changed = true;
      cur = subst_fps(r.subst, cur);
      total = compose_phase_results(r, total);
    }
    if (!changed) return total;
  }
}

// ---------------------------------------------------------------- completeness witness

namespace {

void match_dirt(const Dirt& pat, const Dirt& target, const ParamContext& before, Substitution& bind) {
  if (!pat.tail || before.has_dirt(*pat.tail) || bind.dirts.count(*pat.tail)) return;
  bind.dirts[*pat.tail] = Dirt{minus(target.ops, pat.ops), target.tail};
}

void match_type(const ValueType& pat, const ValueType& target, const ParamContext& before, Substitution& bind) {
  switch (pat.kind) {
    case ValueType::Kind::Param:
      if (!before.find_type(pat.name) && !bind.types.count(pat.name)) bind.types[pat.name] = target;
      return;
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return;
    case ValueType::Kind::Arrow:
      if (target.kind != ValueType::Kind::Arrow) return;
      match_type(pat.argument(), target.argument(), before, bind);
      match_type(pat.result().value, target.result().value, before, bind);
      match_dirt(pat.result().dirt, target.result().dirt, before, bind);
      return;
  }
}

ValueType default_type(const Skeleton& s) {
  switch (s.kind) {
    case Skeleton::Kind::Unit:
      return ValueType::unit();
    case Skeleton::Kind::Base:
      return ValueType::base(s.name);
    case Skeleton::Kind::Arrow:
      return arrow(default_type(s.domain()), default_type(s.codomain()), Dirt::empty());
    case Skeleton::Kind::Param:
      break;
  }
  fail(ErrorCode::InvalidInstantiation, "no default type for skeleton parameter " + s.name);
}

struct StepWitness {
  Substitution eta;
  CoercionFamily family;
};

StepWitness witness_step(const Signature& sig, const Step& st, const Substitution& eta, const ParamContext& use) {
  const ParamContext& b = st.before;
  const ParamContext& a = st.after;
  const Substitution& s = st.subst;

  Substitution bind;
  for (const auto& t : b.types)
    if (s.types.count(t.name))
      match_type(s.types.at(t.name), apply(eta, ValueType::param(t.name)), b, bind);
  for (const auto& d : b.dirts)
    if (s.dirts.count(d)) match_dirt(s.dirts.at(d), apply(eta, Dirt::param(d)), b, bind);

  Substitution out;
  for (const auto& sk : a.skels) out.skels[sk] = apply(eta, Skeleton::param(sk));
  for (const auto& d : a.dirts) {
    if (b.has_dirt(d))
      out.dirts[d] = apply(eta, Dirt::param(d));
    else
      out.dirts[d] = bind.dirts.count(d) ? bind.dirts.at(d) : Dirt::empty();
  }
  for (const auto& t : a.types) {
    if (b.find_type(t.name))
      out.types[t.name] = apply(eta, ValueType::param(t.name));
    else if (bind.types.count(t.name))
      out.types[t.name] = bind.types.at(t.name);
    else
      out.types[t.name] = default_type(apply(out, t.skeleton));
  }

  // Coercions whose constraint changed shape get the proof's construction.
  std::map<Name, ValueCoercion> ty_override;
  std::map<Name, DirtCoercion> dirt_override;
  const bool bridge = st.kind == StepKind::BridgeIn || st.kind == StepKind::BridgeOut;
  if (bridge && st.sort == ParamSort::Type) {
    const auto edge = apply(eta, ValueCoercion::param(st.edge));
    for (const auto& c : b.type_coercions) {
      if (c.name == st.edge) continue;
      const auto own = apply(eta, ValueCoercion::param(c.name));
      if (st.kind == StepKind::BridgeIn && c.lhs.is_param() && c.lhs.name == st.removed)
        ty_override[c.name] = compose_coercions(own, edge);
      if (st.kind == StepKind::BridgeOut && c.rhs.is_param() && c.rhs.name == st.removed)
        ty_override[c.name] = compose_coercions(edge, own);
    }
  }
  if (bridge && st.sort == ParamSort::Dirt) {
    const auto edge = apply(eta, DirtCoercion::param(st.edge));
    for (const auto& c : b.dirt_coercions) {
      if (c.name == st.edge) continue;
      const auto own = apply(eta, DirtCoercion::param(c.name));
      if (st.kind == StepKind::BridgeIn && *c.lhs.tail == st.removed)
        dirt_override[c.name] = compose_coercions(own, edge);
      if (st.kind == StepKind::BridgeOut && c.rhs.tail && *c.rhs.tail == st.removed)
        dirt_override[c.name] = compose_coercions(union_both(c.rhs.ops, edge), own);
    }
  }

  for (const auto& c : a.dirt_coercions) {
    const Dirt lhs = apply(out, c.lhs), rhs = apply(out, c.rhs);
    if (auto it = dirt_override.find(c.name); it != dirt_override.end()) {
      out.dircos[c.name] = it->second;
      continue;
    }
    const DirtCoercionDecl* old = b.find_dirt_coercion(c.name);
    if (old && apply(eta, old->lhs) == lhs && apply(eta, old->rhs) == rhs) {
      out.dircos[c.name] = apply(eta, DirtCoercion::param(c.name));
      continue;
    }
    auto g = synthesize_coercion(lhs, rhs);
    if (!g) fail(ErrorCode::InvalidInstantiation, "no witness for " + c.name);
    out.dircos[c.name] = *g;
  }
  for (const auto& c : a.type_coercions) {
    const ValueType lhs = apply(out, c.lhs), rhs = apply(out, c.rhs);
    if (auto it = ty_override.find(c.name); it != ty_override.end()) {
      out.tycos[c.name] = it->second;
      continue;
    }
    const TypeCoercionDecl* old = b.find_type_coercion(c.name);
    if (old && apply(eta, old->lhs) == lhs && apply(eta, old->rhs) == rhs) {
      out.tycos[c.name] = apply(eta, ValueCoercion::param(c.name));
      continue;
    }
    auto g = synthesize_coercion(lhs, rhs);
    if (!g) fail(ErrorCode::InvalidInstantiation, "no witness for " + c.name);
    out.tycos[c.name] = *g;
  }
  (void)use;
  (void)sig;

  CoercionFamily y = refl_family(eta, st.polarity);
  const FreeParamSet& f = st.polarity;
  if (bridge) {
    const ParamRef r{st.sort, st.removed};
    const bool take = st.kind == StepKind::BridgeIn ? f.is_pos(r) : f.is_neg(r);
    if (take) {
      if (st.sort == ParamSort::Type)
        y.ty[st.removed] = apply(eta, ValueCoercion::param(st.edge));
      else
        y.dirt[st.removed] = apply(eta, DirtCoercion::param(st.edge));
    }
  }
  if (st.kind == StepKind::EmptyDirt)
    for (const auto& d : st.dirt_set)
      if (f.is_pos(dirt_ref(d))) y.dirt[d] = derived_empty(apply(eta, Dirt::param(d)));
  if (st.kind == StepKind::FullDirt) {
    const Dirt full = apply(s, Dirt::param(*st.dirt_set.begin()));
    for (const auto& d : st.dirt_set)
      if (f.is_neg(dirt_ref(d))) {
        auto g = synthesize_coercion(apply(eta, Dirt::param(d)), full);
        if (!g) fail(ErrorCode::Internal, "full dirt witness");
        y.dirt[d] = *g;
      }
  }
  return {std::move(out), std::move(y)};
}

}  // namespace

WitnessResult build_witness(const Signature& sig, const std::vector<Step>& trace, const Substitution& eta,
                            const FreeParamSet& f, const ParamContext& use) {
  Substitution cur = eta;
  Substitution acc;
  CoercionFamily total = refl_family(eta, f);
  for (const auto& st : trace) {
    StepWitness w = witness_step(sig, st, cur, use);
    total = compose_families(total, precompose_family(w.family, acc, f), f);
    acc = compose(st.subst, acc);
    cur = std::move(w.eta);
  }
  return {cur, total};
}

}  // namespace coreeff
