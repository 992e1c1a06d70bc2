#include "coreeff/reduce.hpp"

#include <algorithm>
#include <deque>

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/print.hpp"

namespace coreeff {

namespace {

OpSet minus(const OpSet& a, const OpSet& b) {
  OpSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool subset(const OpSet& a, const OpSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Substitution single_type(const Name& a, ValueType t) {
  Substitution s;
  s.types.emplace(a, std::move(t));
  return s;
}

}  // namespace

TypeParamReduction reduce_type_params(const std::vector<TypeParamDecl>& types, std::vector<Name> dirts,
                                      NameSupply& names) {
  TypeParamReduction out;
  out.dirts = std::move(dirts);
  std::deque<TypeParamDecl> work(types.begin(), types.end());
  while (!work.empty()) {
    TypeParamDecl t = work.front();
    work.pop_front();
    switch (t.skeleton.kind) {
      case Skeleton::Kind::Param:
        out.types.push_back(t);
        break;
      case Skeleton::Kind::Unit:
        out.subst = compose(single_type(t.name, ValueType::unit()), out.subst);
        break;
      case Skeleton::Kind::Base:
        out.subst = compose(single_type(t.name, ValueType::base(t.skeleton.name)), out.subst);
        break;
      case Skeleton::Kind::Arrow: {
        Name a1 = names.fresh_type();
        Name a2 = names.fresh_type();
        Name d = names.fresh_dirt();
        out.dirts.push_back(d);
        work.push_front({a2, t.skeleton.codomain()});
        work.push_front({a1, t.skeleton.domain()});
        out.subst = compose(
            single_type(t.name, arrow(ValueType::param(a1), ValueType::param(a2), Dirt::param(d))), out.subst);
        break;
      }
    }
  }
  return out;
}

TypeConstraintReduction reduce_type_constraints(const Signature& sig,
                                                const std::vector<TypeCoercionDecl>& constraints,
                                                std::vector<DirtCoercionDecl> dirt_coercions,
                                                const Substitution& acc, NameSupply& names) {
  (void)sig;
  TypeConstraintReduction out;
  out.dirt_coercions = std::move(dirt_coercions);
  out.subst = acc;
  std::deque<TypeCoercionDecl> work(constraints.begin(), constraints.end());
  while (!work.empty()) {
    TypeCoercionDecl c = work.front();
    work.pop_front();
    const ValueType& l = c.lhs;
    const ValueType& r = c.rhs;
    Substitution step;
    if (l.is_param() && r.is_param()) {
      out.type_coercions.push_back(c);
      continue;
    }
    if (l.kind == ValueType::Kind::Unit && r.kind == ValueType::Kind::Unit) {
      step.tycos.emplace(c.name, ValueCoercion::refl_unit());
    } else if (l.kind == ValueType::Kind::Base && r.kind == ValueType::Kind::Base && l.name == r.name) {
      step.tycos.emplace(c.name, ValueCoercion::refl_base(l.name));
    } else if (l.kind == ValueType::Kind::Arrow && r.kind == ValueType::Kind::Arrow) {
      Name w1 = names.fresh_type_coercion();
      Name w2 = names.fresh_type_coercion();
      Name p = names.fresh_dirt_coercion();
      work.push_front({w2, l.result().value, r.result().value});
      work.push_front({w1, r.argument(), l.argument()});
      out.dirt_coercions.push_back({p, l.result().dirt, r.result().dirt});
      step.tycos.emplace(c.name, ValueCoercion::arrow(ValueCoercion::param(w1),
                                                      CompCoercion{ValueCoercion::param(w2),
                                                                   DirtCoercion::param(p)}));
    } else {
      fail(ErrorCode::SkeletonMismatch, c.name + " relates " + to_string(l) + " and " + to_string(r));
    }
    out.subst = compose(step, out.subst);
  }
  return out;
}

DirtConstraintReduction reduce_dirt_constraints(std::vector<DirtCoercionDecl> constraints,
                                                std::vector<Name> dirts, const Substitution& acc,
                                                NameSupply& names) {
  DirtConstraintReduction out;
  out.dirts = std::move(dirts);
  out.subst = acc;

  OpSet mentioned;
  for (const auto& c : constraints) {
    mentioned.insert(c.lhs.ops.begin(), c.lhs.ops.end());
    mentioned.insert(c.rhs.ops.begin(), c.rhs.ops.end());
  }
  const std::size_t fuel_limit =
      64 + 4 * (out.dirts.size() + 1) * (mentioned.size() + 1) * (constraints.size() + 1);
  std::size_t restarts = 0;

  std::deque<DirtCoercionDecl> work(constraints.begin(), constraints.end());
  std::vector<DirtCoercionDecl> reduced;
  while (!work.empty()) {
    DirtCoercionDecl c = work.front();
    work.pop_front();
    const OpSet& o1 = c.lhs.ops;
    const OpSet& o2 = c.rhs.ops;
    const auto& t1 = c.lhs.tail;
    const auto& t2 = c.rhs.tail;
    Substitution step;

    if (subset(o1, o2)) {
      if (!t1 && !t2) {
        step.dircos.emplace(c.name, union_both(o1, derived_empty(Dirt::closed(minus(o2, o1)))));
      } else if (!t1 && t2) {
        step.dircos.emplace(c.name, union_both(o1, union_right(minus(o2, o1), DirtCoercion::empty_under(*t2))));
      } else if (o1.empty()) {
        reduced.push_back(c);
      } else {
        Name p = names.fresh_dirt_coercion();
        Dirt rhs = t2 ? Dirt::open(minus(o2, o1), *t2) : Dirt::closed(o2);
        reduced.push_back({p, Dirt::param(*t1), rhs});
        step.dircos.emplace(c.name, union_both(o1, DirtCoercion::param(p)));
      }
      if (!step.empty()) out.subst = compose(step, out.subst);
      continue;
    }

    if (!t2)
      fail(ErrorCode::Unsatisfiable, c.name + ": " + to_string(c.lhs) + " <= " + to_string(c.rhs));

    // The right tail must absorb the missing operations; everything seen so
    // far is reprocessed under the new substitution, including c itself.
    if (++restarts > fuel_limit) fail(ErrorCode::Internal, "dirt constraint reduction ran out of fuel");
    Name fresh = names.fresh_dirt();
    step.dirts.emplace(*t2, Dirt::open(minus(o1, o2), fresh));
    std::replace(out.dirts.begin(), out.dirts.end(), *t2, fresh);
    std::deque<DirtCoercionDecl> next;
    auto push = [&](const DirtCoercionDecl& d) {
      next.push_back({d.name, apply(step, d.lhs), apply(step, d.rhs)});
    };
    for (const auto& d : reduced) push(d);
    push(c);
    for (const auto& d : work) push(d);
    reduced.clear();
    work = std::move(next);
    out.subst = compose(step, out.subst);
  }
  out.dirt_coercions = std::move(reduced);
  return out;
}

ReductionResult reduce_context(const Signature& sig, const ParamContext& ctx, NameSupply* names) {
  NameSupply local(ctx);
  NameSupply& supply = names ? *names : local;
  if (names) supply.reserve(ctx);

  TypeParamReduction t = reduce_type_params(ctx.types, ctx.dirts, supply);
  std::vector<TypeCoercionDecl> tcs;
  for (const auto& c : ctx.type_coercions) tcs.push_back({c.name, apply(t.subst, c.lhs), apply(t.subst, c.rhs)});
  TypeConstraintReduction tc = reduce_type_constraints(sig, tcs, ctx.dirt_coercions, t.subst, supply);
  DirtConstraintReduction dc = reduce_dirt_constraints(tc.dirt_coercions, t.dirts, tc.subst, supply);

  ReductionResult out;
  out.context.skels = ctx.skels;
  out.context.dirts = dc.dirts;
  out.context.types = t.types;
  out.context.dirt_coercions = dc.dirt_coercions;
  out.context.type_coercions = tc.type_coercions;
  out.subst = restrict_to(dc.subst, ctx);
  return out;
}

bool is_canonical(const ParamContext& ctx) {
  for (const auto& t : ctx.types)
    if (!t.skeleton.is_param()) return false;
  for (const auto& c : ctx.type_coercions)
    if (!c.lhs.is_param() || !c.rhs.is_param()) return false;
  for (const auto& c : ctx.dirt_coercions)
    if (!c.lhs.is_param()) return false;
  return true;
}

}  // namespace coreeff
