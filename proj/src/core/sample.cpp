#include "coreeff/sample.hpp"

#include <algorithm>

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/reduce.hpp"

namespace coreeff {

namespace {

OpSet random_subset(const OpSet& all, std::mt19937_64& rng) {
  OpSet out;
  for (const auto& op : all)
    if (rng() & 1) out.insert(op);
  return out;
}

OpSet intersect(const OpSet& a, const OpSet& b) {
  OpSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

OpSet unite(OpSet a, const OpSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

Substitution sample_canonical(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng) {
  const OpSet all = sig.all_ops();
  const Skeleton bb = Skeleton::arrow(Skeleton::base("bool"), Skeleton::base("bool"));
  const Skeleton choices[] = {Skeleton::unit(), Skeleton::base("bool"), Skeleton::base("int"), bb};

  Substitution eta;
  for (const auto& s : ctx.skels) eta.skels[s] = choices[rng() % 4];

  // Dirt of each function-typed parameter and each dirt parameter, shrunk
  // to a solution of the constraints.
  std::map<Name, OpSet> arrow_dirt, dirt;
  for (const auto& t : ctx.types)
    if (apply(eta, t.skeleton) == bb) arrow_dirt[t.name] = random_subset(all, rng);
  for (const auto& d : ctx.dirts) dirt[d] = random_subset(all, rng);
  for (bool changed = true; changed;) {
    changed = false;
    auto shrink = [&](OpSet& x, const OpSet& bound) {
      OpSet y = intersect(x, bound);
      if (y != x) {
        x = std::move(y);
        changed = true;
      }
    };
    for (const auto& c : ctx.type_coercions)
      if (arrow_dirt.count(c.lhs.name)) shrink(arrow_dirt[c.lhs.name], arrow_dirt[c.rhs.name]);
    for (const auto& c : ctx.dirt_coercions)
      shrink(dirt[*c.lhs.tail], c.rhs.tail ? unite(c.rhs.ops, dirt[*c.rhs.tail]) : c.rhs.ops);
  }
  for (const auto& d : ctx.dirts) eta.dirts[d] = Dirt::closed(dirt[d]);
  for (const auto& t : ctx.types) {
    const Skeleton s = apply(eta, t.skeleton);
    if (s == bb)
      eta.types[t.name] = arrow(ValueType::base("bool"), ValueType::base("bool"), Dirt::closed(arrow_dirt[t.name]));
    else if (s.kind == Skeleton::Kind::Unit)
      eta.types[t.name] = ValueType::unit();
    else
      eta.types[t.name] = ValueType::base(s.name);
  }
  for (const auto& c : ctx.type_coercions) {
    auto g = synthesize_coercion(apply(eta, c.lhs), apply(eta, c.rhs));
    if (!g) fail(ErrorCode::Internal, "sampled instantiation violates " + c.name);
    eta.tycos[c.name] = *g;
  }
  for (const auto& c : ctx.dirt_coercions) {
    auto g = synthesize_coercion(apply(eta, c.lhs), apply(eta, c.rhs));
    if (!g) fail(ErrorCode::Internal, "sampled instantiation violates " + c.name);
    eta.dircos[c.name] = *g;
  }
  return eta;
}

}  // namespace

Substitution sample_instantiation(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng) {
  if (is_canonical(ctx)) return sample_canonical(sig, ctx, rng);
  const ReductionResult red = reduce_context(sig, ctx);
  const Substitution eta_c = sample_canonical(sig, red.context, rng);
  // Parameters of ctx map through the reduction; the reduced ones are dropped.
  Substitution out;
  const Substitution full = compose(eta_c, red.subst);
  for (const auto& s : ctx.skels) out.skels[s] = apply(full, Skeleton::param(s));
  for (const auto& d : ctx.dirts) out.dirts[d] = apply(full, Dirt::param(d));
  for (const auto& t : ctx.types) out.types[t.name] = apply(full, ValueType::param(t.name));
  for (const auto& c : ctx.dirt_coercions) out.dircos[c.name] = apply(full, DirtCoercion::param(c.name));
  for (const auto& c : ctx.type_coercions) out.tycos[c.name] = apply(full, ValueCoercion::param(c.name));
  return out;
}

}  // namespace coreeff
