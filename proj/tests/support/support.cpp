#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coreeff/error.hpp"
#include "coreeff/reduce.hpp"

namespace testsupport {

CorpusItem item(const std::string& signature, const std::string& context, const std::string& rest) {
  std::string text = "(item t ";
  if (!signature.empty()) text += "(signature " + signature + ") ";
  text += "(context " + context + ") " + rest + ")";
  return parse_corpus(text).at(0);
}

ParamContext context_of(const std::string& context, const std::string& signature) {
  return item(signature, context).context;
}

Signature small_signature() {
  Signature sig;
  sig.add_op("Get", ValueType::unit(), ValueType::base("bool"));
  sig.add_op("Put", ValueType::unit(), ValueType::base("bool"));
  return sig;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> metrics_lines(const MetricsReport& r) {
  std::vector<std::string> out;
  for (const auto& it : r.items)
    for (const auto& row : it.rows) {
      const auto& m = row.metrics;
      out.push_back(it.name + " " + row.config + " " + std::to_string(m.dirt_nodes) + " " +
                    std::to_string(m.dirt_edges) + " " + std::to_string(m.type_nodes) + " " +
                    std::to_string(m.type_edges));
    }
  return out;
}

std::vector<std::string> golden_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool coin(std::mt19937_64& rng, int num, int den) { return static_cast<int>(rng() % den) < num; }

template <class T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[pick(rng, xs.size())];
}

OpSet random_ops(const Signature& sig, std::mt19937_64& rng, int num = 1, int den = 3) {
  OpSet out;
  for (const auto& op : sig.all_ops())
    if (coin(rng, num, den)) out.insert(op);
  return out;
}

std::vector<Name> type_params_with(const ParamContext& ctx, const Skeleton& s) {
  std::vector<Name> out;
  for (const auto& t : ctx.types)
    if (t.skeleton == s) out.push_back(t.name);
  return out;
}

// Skeletons for which random_type can always produce a type.
Skeleton inhabited_skeleton(const ParamContext& ctx, std::mt19937_64& rng, int depth) {
  switch (pick(rng, depth > 0 ? 6 : 5)) {
    case 0:
      return Skeleton::unit();
    case 1:
      return Skeleton::base("bool");
    case 2:
      return Skeleton::base("int");
    case 3:
    case 4:
      if (!ctx.types.empty()) return choose(rng, ctx.types).skeleton;
      return Skeleton::unit();
    default:
      return Skeleton::arrow(inhabited_skeleton(ctx, rng, depth - 1), inhabited_skeleton(ctx, rng, depth - 1));
  }
}

Dirt join(const Dirt& a, const Dirt& b, bool& ok) {
  ok = true;
  if (a.tail && b.tail && *a.tail != *b.tail) {
    ok = false;
    return a;
  }
  Dirt out = a;
  out.ops.insert(b.ops.begin(), b.ops.end());
  if (!out.tail) out.tail = b.tail;
  return out;
}

struct TermGen {
  const Signature& sig;
  const ParamContext& ctx;
  std::mt19937_64& rng;
  int counter = 0;

  Name fresh(const char* prefix) { return prefix + std::to_string(++counter); }

  static TypingContext extend(TypingContext g, const Name& x, const ValueType& a) {
    g.bindings.push_back({x, a});
    return g;
  }

  ValueCoercion value_coercion_from(const ValueType& a) {
    std::vector<const TypeCoercionDecl*> out;
    for (const auto& c : ctx.type_coercions)
      if (c.lhs == a) out.push_back(&c);
    if (!out.empty() && coin(rng, 2, 3)) {
      const auto* c = out[pick(rng, out.size())];
      ValueCoercion g = ValueCoercion::param(c->name);
      for (const auto& c2 : ctx.type_coercions)
        if (c2.lhs == c->rhs && coin(rng, 1, 2)) return ValueCoercion::compose(ValueCoercion::param(c2.name), g);
      return g;
    }
    return derived_refl(a);
  }

  DirtCoercion dirt_coercion_from(const Dirt& d, Dirt& rhs) {
    if (d.is_param()) {
      std::vector<const DirtCoercionDecl*> out;
      for (const auto& c : ctx.dirt_coercions)
        if (c.lhs == d) out.push_back(&c);
      if (!out.empty() && coin(rng, 2, 3)) {
        const auto* c = out[pick(rng, out.size())];
        rhs = c->rhs;
        return DirtCoercion::param(c->name);
      }
    }
    // Widen by some operations, and into a dirt parameter when closed.
    rhs = d;
    const OpSet extra = random_ops(sig, rng);
    rhs.ops.insert(extra.begin(), extra.end());
    if (!rhs.tail && !ctx.dirts.empty() && coin(rng, 1, 2)) rhs.tail = choose(rng, ctx.dirts);
    return *synthesize_coercion(d, rhs);
  }

  CompTerm lift(const CompTerm& c, const CompType& t, const Dirt& target) {
    if (t.dirt == target) return c;
    return CompTerm::cast(c, CompCoercion{derived_refl(t.value), *synthesize_coercion(t.dirt, target)});
  }

  std::pair<ValueTerm, ValueType> value(const TypingContext& g, int depth) {
    switch (pick(rng, depth > 0 ? 5 : 2)) {
      case 0: {
        const auto& b = choose(rng, g.bindings);
        return {ValueTerm::variable(b.var), *g.lookup(b.var)};
      }
      case 1:
        return {ValueTerm::unit(), ValueType::unit()};
      case 2: {
        const Name y = fresh("y");
        const ValueType a = random_type(sig, ctx, inhabited_skeleton(ctx, rng, 1), rng, 1);
        auto [c, ct] = comp(extend(g, y, a), depth - 1);
        return {ValueTerm::lambda(y, a, c), ValueType::arrow(a, ct)};
      }
      default: {
        auto [v, a] = value(g, depth - 1);
        ValueCoercion co = value_coercion_from(a);
        auto ends = check_value_coercion(sig, ctx, co);
        return {ValueTerm::cast(v, co), ends.second};
      }
    }
  }

  std::pair<CompTerm, CompType> comp(const TypingContext& g, int depth) {
    const bool has_ops = !sig.ops().empty();
    switch (pick(rng, depth > 0 ? 6 : 1)) {
      case 0: {
        auto [v, a] = value(g, depth);
        return {CompTerm::ret(v), CompType{a, Dirt::empty()}};
      }
      case 1: {
        auto [c1, t1] = comp(g, depth - 1);
        const Name x = fresh("x");
        auto [c2, t2] = comp(extend(g, x, t1.value), depth - 1);
        bool ok = false;
        Dirt d = join(t1.dirt, t2.dirt, ok);
        if (!ok) return {c1, t1};
        return {CompTerm::do_(x, lift(c1, t1, d), lift(c2, t2, d)), CompType{t2.value, d}};
      }
      case 2: {
        if (!has_ops) return comp(g, depth - 1);
        std::vector<Name> unit_ops;
        for (const auto& [op, s] : sig.ops())
          if (s.param == ValueType::unit()) unit_ops.push_back(op);
        if (unit_ops.empty()) return comp(g, depth - 1);
        const Name op = choose(rng, unit_ops);
        const Name y = fresh("y");
        auto [c, t] = comp(extend(g, y, sig.op(op).result), depth - 1);
        Dirt d = dirt_union({op}, t.dirt);
        return {CompTerm::op_call(op, ValueTerm::unit(), y, sig.op(op).result, lift(c, t, d)), CompType{t.value, d}};
      }
      case 3: {
        auto [v, a] = value(g, depth - 1);
        const Name y = fresh("y");
        auto [c, t] = comp(extend(g, y, a), depth - 1);
        return {CompTerm::app(ValueTerm::lambda(y, a, c), v), t};
      }
      case 4: {
        auto [v, a] = value(g, depth - 1);
        const Name x = fresh("x");
        auto [c, t] = comp(extend(g, x, a), depth - 1);
        return {CompTerm::let(x, v, c), t};
      }
      default: {
        auto [c, t] = comp(g, depth - 1);
        ValueCoercion vc = value_coercion_from(t.value);
        Dirt rhs;
        DirtCoercion dc = dirt_coercion_from(t.dirt, rhs);
        auto ends = check_value_coercion(sig, ctx, vc);
        return {CompTerm::cast(c, CompCoercion{vc, dc}), CompType{ends.second, rhs}};
      }
    }
  }
};

}  // namespace

// ---------------------------------------------------------------- contexts

ParamContext random_canonical_context(const Signature& sig, std::mt19937_64& rng, const ContextShape& shape) {
  ParamContext ctx;
  const int ns = 1 + static_cast<int>(pick(rng, shape.max_skels));
  for (int i = 1; i <= ns; ++i) ctx.skels.push_back("s" + std::to_string(i));
  const int nd = static_cast<int>(pick(rng, shape.max_dirts + 1));
  for (int i = 1; i <= nd; ++i) ctx.dirts.push_back("d" + std::to_string(i));
  const int nt = static_cast<int>(pick(rng, shape.max_types + 1));
  for (int i = 1; i <= nt; ++i)
    ctx.types.push_back({"a" + std::to_string(i), Skeleton::param(choose(rng, ctx.skels))});
  if (!ctx.types.empty()) {
    const int ne = static_cast<int>(pick(rng, shape.max_tycos + 1));
    for (int i = 1; i <= ne; ++i) {
      const auto& a = choose(rng, ctx.types);
      const auto peers = type_params_with(ctx, a.skeleton);
      // Loops are rarer than proper edges.
      Name b = choose(rng, peers);
      if (b == a.name && peers.size() > 1 && coin(rng, 2, 3)) b = choose(rng, peers);
      ctx.type_coercions.push_back({"w" + std::to_string(i), ValueType::param(a.name), ValueType::param(b)});
    }
  }
  if (!ctx.dirts.empty()) {
    const int ne = static_cast<int>(pick(rng, shape.max_dcos + 1));
    for (int i = 1; i <= ne; ++i) {
      Dirt rhs;
      if (coin(rng, 1, 3)) rhs.ops = random_ops(sig, rng, 1, 2);
      if (!coin(rng, 1, 5)) rhs.tail = choose(rng, ctx.dirts);
      ctx.dirt_coercions.push_back({"p" + std::to_string(i), Dirt::param(choose(rng, ctx.dirts)), rhs});
    }
  }
  return ctx;
}

FreeParamSet random_polarity(const ParamContext& ctx, std::mt19937_64& rng) {
  FreeParamSet f;
  auto add = [&](const ParamRef& p) {
    switch (pick(rng, 4)) {
      case 1:
        f.pos.insert(p);
        break;
      case 2:
        f.neg.insert(p);
        break;
      case 3:
        f.pos.insert(p);
        f.neg.insert(p);
        break;
      default:
        break;
    }
  };
  for (const auto& t : ctx.types) add(type_ref(t.name));
  for (const auto& d : ctx.dirts) add(dirt_ref(d));
  return f;
}

Skeleton random_skeleton(const ParamContext& ctx, std::mt19937_64& rng, int depth) {
  switch (pick(rng, depth > 0 ? 5 : 4)) {
    case 0:
      return Skeleton::unit();
    case 1:
      return Skeleton::base("bool");
    case 2:
      if (!ctx.skels.empty()) return Skeleton::param(choose(rng, ctx.skels));
      return Skeleton::base("int");
    case 3:
      return Skeleton::base("int");
    default:
      return Skeleton::arrow(random_skeleton(ctx, rng, depth - 1), random_skeleton(ctx, rng, depth - 1));
  }
}

Dirt random_dirt(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng) {
  Dirt d;
  d.ops = random_ops(sig, rng);
  if (!ctx.dirts.empty() && coin(rng, 3, 5)) d.tail = choose(rng, ctx.dirts);
  return d;
}

ValueType random_type(const Signature& sig, const ParamContext& ctx, const Skeleton& skel, std::mt19937_64& rng,
                      int depth) {
  const auto same = type_params_with(ctx, skel);
  if (skel.is_param()) {
    if (same.empty()) coreeff::fail(ErrorCode::Internal, "no type parameter of skeleton " + skel.name);
    return ValueType::param(choose(rng, same));
  }
  if (!same.empty() && coin(rng, 2, 5)) return ValueType::param(choose(rng, same));
  switch (skel.kind) {
    case Skeleton::Kind::Unit:
      return ValueType::unit();
    case Skeleton::Kind::Base:
      return ValueType::base(skel.name);
    case Skeleton::Kind::Arrow:
      return ValueType::arrow(random_type(sig, ctx, skel.domain(), rng, depth - 1),
                              CompType{random_type(sig, ctx, skel.codomain(), rng, depth - 1), random_dirt(sig, ctx, rng)});
    case Skeleton::Kind::Param:
      break;
  }
  coreeff::fail(ErrorCode::Internal, "skeleton kind");
}

ParamContext random_context(const Signature& sig, std::mt19937_64& rng) {
  for (;;) {
    ParamContext ctx;
    const int ns = 1 + static_cast<int>(pick(rng, 2));
    for (int i = 1; i <= ns; ++i) ctx.skels.push_back("s" + std::to_string(i));
    const int nd = static_cast<int>(pick(rng, 4));
    for (int i = 1; i <= nd; ++i) ctx.dirts.push_back("d" + std::to_string(i));
    const int nt = 1 + static_cast<int>(pick(rng, 5));
    for (int i = 1; i <= nt; ++i) {
      Skeleton s = coin(rng, 3, 5) ? Skeleton::param(choose(rng, ctx.skels)) : random_skeleton(ctx, rng, 1);
      ctx.types.push_back({"a" + std::to_string(i), s});
    }
    for (const auto& s : ctx.skels)
      if (type_params_with(ctx, Skeleton::param(s)).empty())
        ctx.types.push_back({"a" + std::to_string(ctx.types.size() + 1), Skeleton::param(s)});
    const int ne = static_cast<int>(pick(rng, 5));
    for (int i = 1; i <= ne; ++i) {
      const auto& a = choose(rng, ctx.types);
      ValueType lhs = coin(rng, 1, 2) ? ValueType::param(a.name) : random_type(sig, ctx, a.skeleton, rng);
      ValueType rhs = random_type(sig, ctx, a.skeleton, rng);
      ctx.type_coercions.push_back({"w" + std::to_string(i), lhs, rhs});
    }
    const int nde = static_cast<int>(pick(rng, 4));
    for (int i = 1; i <= nde; ++i)
      ctx.dirt_coercions.push_back({"p" + std::to_string(i), random_dirt(sig, ctx, rng), random_dirt(sig, ctx, rng)});
    try {
      wf_param_context(sig, ctx);
      reduce_context(sig, ctx);
      return ctx;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsatisfiable) throw;
    }
  }
}

Substitution random_substitution(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                 ParamContext& out, int salt) {
  const std::string z = "z" + std::to_string(salt) + "_";
  Substitution s;
  ParamContext target;  // survivors and fresh parameters, used to build images

  const Name fresh_skel = z + "s";
  std::vector<Name> kept_skels;
  for (const auto& p : ctx.skels)
    if (coin(rng, 3, 5)) kept_skels.push_back(p);
  target.skels = kept_skels;
  target.skels.push_back(fresh_skel);
  for (const auto& p : ctx.skels) {
    if (std::find(kept_skels.begin(), kept_skels.end(), p) != kept_skels.end()) continue;
    Skeleton img;
    switch (pick(rng, 4)) {
      case 0:
        img = Skeleton::param(choose(rng, target.skels));
        break;
      case 1:
        img = Skeleton::base("bool");
        break;
      case 2:
        img = Skeleton::unit();
        break;
      default:
        img = Skeleton::arrow(Skeleton::param(choose(rng, target.skels)), Skeleton::base("bool"));
        break;
    }
    s.skels[p] = img;
  }

  const Name fresh_dirt = z + "d";
  std::vector<Name> kept_dirts;
  for (const auto& d : ctx.dirts)
    if (coin(rng, 1, 2)) kept_dirts.push_back(d);
  target.dirts = kept_dirts;
  target.dirts.push_back(fresh_dirt);
  for (const auto& d : ctx.dirts) {
    if (std::find(kept_dirts.begin(), kept_dirts.end(), d) != kept_dirts.end()) continue;
    Dirt img;
    img.ops = random_ops(sig, rng);
    if (!coin(rng, 1, 4)) img.tail = choose(rng, target.dirts);
    s.dirts[d] = img;
  }

  std::vector<TypeParamDecl> mapped;
  for (const auto& t : ctx.types) {
    TypeParamDecl nt{t.name, apply(s, t.skeleton)};
    if (coin(rng, 1, 2))
      target.types.push_back(nt);
    else
      mapped.push_back(nt);
  }
  for (const auto& sk : target.skels) target.types.push_back({z + "a_" + sk, Skeleton::param(sk)});
  for (const auto& t : mapped) s.types[t.name] = random_type(sig, target, t.skeleton, rng);

  for (const auto& c : ctx.type_coercions) {
    if (!coin(rng, 1, 3)) continue;
    if (auto g = synthesize_coercion(apply(s, c.lhs), apply(s, c.rhs))) s.tycos[c.name] = *g;
  }
  for (const auto& c : ctx.dirt_coercions) {
    if (!coin(rng, 1, 3)) continue;
    if (auto g = synthesize_coercion(apply(s, c.lhs), apply(s, c.rhs))) s.dircos[c.name] = *g;
  }

  out = apply(s, ctx);
  out.skels.push_back(fresh_skel);
  out.dirts.push_back(fresh_dirt);
  for (const auto& sk : target.skels) out.types.push_back({z + "a_" + sk, Skeleton::param(sk)});
  return s;
}

// ---------------------------------------------------------------- judgments

ValueCoercion random_value_coercion(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                    int depth) {
  const auto& tc = ctx.type_coercions;
  switch (pick(rng, depth > 0 ? 4 : 3)) {
    case 0:
      if (!tc.empty()) return ValueCoercion::param(choose(rng, tc).name);
      break;
    case 1:
      if (!tc.empty()) {
        const auto& c = choose(rng, tc);
        for (const auto& c2 : tc)
          if (c2.lhs == c.rhs) return ValueCoercion::compose(ValueCoercion::param(c2.name), ValueCoercion::param(c.name));
        return ValueCoercion::compose(derived_refl(c.rhs), ValueCoercion::param(c.name));
      }
      break;
    case 3:
      return ValueCoercion::arrow(random_value_coercion(sig, ctx, rng, depth - 1),
                                  CompCoercion{random_value_coercion(sig, ctx, rng, depth - 1),
                                               random_dirt_coercion(sig, ctx, rng, depth - 1)});
    default:
      break;
  }
  return derived_refl(random_type(sig, ctx, inhabited_skeleton(ctx, rng, 1), rng));
}

DirtCoercion random_dirt_coercion(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                  int depth) {
  const auto& dc = ctx.dirt_coercions;
  const auto ops = sig.all_ops();
  switch (pick(rng, depth > 0 && !ops.empty() ? 7 : 5)) {
    case 0:
      if (!dc.empty()) return DirtCoercion::param(choose(rng, dc).name);
      break;
    case 1:
      if (!ctx.dirts.empty()) return DirtCoercion::refl_param(choose(rng, ctx.dirts));
      break;
    case 2:
      if (!ctx.dirts.empty()) return DirtCoercion::empty_under(choose(rng, ctx.dirts));
      break;
    case 3:
      if (!dc.empty()) {
        const auto& c = choose(rng, dc);
        return DirtCoercion::compose(derived_refl(c.rhs), DirtCoercion::param(c.name));
      }
      break;
    case 5:
      return DirtCoercion::union_both(*std::next(ops.begin(), pick(rng, ops.size())),
                                      random_dirt_coercion(sig, ctx, rng, depth - 1));
    case 6:
      return DirtCoercion::union_right(*std::next(ops.begin(), pick(rng, ops.size())),
                                       random_dirt_coercion(sig, ctx, rng, depth - 1));
    default:
      break;
  }
  return DirtCoercion::refl_empty();
}

TypingContext variables_for(const ParamContext& ctx) {
  TypingContext g;
  for (const auto& t : ctx.types) g.bindings.push_back({"x_" + t.name, ValueType::param(t.name)});
  g.bindings.push_back({"xb", ValueType::base("bool")});
  g.bindings.push_back({"xu", ValueType::unit()});
  return g;
}

std::pair<ValueTerm, ValueType> random_value_term(const Signature& sig, const ParamContext& ctx,
                                                  const TypingContext& gamma, std::mt19937_64& rng, int depth) {
  TermGen gen{sig, ctx, rng};
  return gen.value(gamma, depth);
}

std::pair<CompTerm, CompType> random_comp_term(const Signature& sig, const ParamContext& ctx,
                                               const TypingContext& gamma, std::mt19937_64& rng, int depth) {
  TermGen gen{sig, ctx, rng};
  return gen.comp(gamma, depth);
}

}  // namespace testsupport
