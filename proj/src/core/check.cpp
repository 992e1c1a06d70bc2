#include "coreeff/check.hpp"

#include <algorithm>

#include "coreeff/error.hpp"
#include "coreeff/print.hpp"

namespace coreeff {

namespace {

OpSet minus(const OpSet& a, const OpSet& b) {
  OpSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

void check_name(const std::set<Name>& seen, const Name& n) {
  if (seen.count(n)) fail(ErrorCode::IllFormedContext, "duplicate parameter " + n);
}

std::pair<ValueType, ValueType> value_endpoints(const Signature& sig, const ParamContext& ctx,
                                                const ValueCoercion& v);

std::pair<CompType, CompType> comp_endpoints(const Signature& sig, const ParamContext& ctx,
                                             const CompCoercion& c) {
  auto [a, b] = value_endpoints(sig, ctx, c.value);
  auto [d1, d2] = check_dirt_coercion(sig, ctx, c.dirt);
  return {CompType{a, d1}, CompType{b, d2}};
}

std::pair<ValueType, ValueType> value_endpoints(const Signature& sig, const ParamContext& ctx,
                                                const ValueCoercion& v) {
  using K = ValueCoercion::Kind;
  switch (v.kind) {
    case K::Param: {
      const auto* decl = ctx.find_type_coercion(v.name);
      if (!decl) fail(ErrorCode::UnboundCoercionParam, v.name);
      return {decl->lhs, decl->rhs};
    }
    case K::Compose: {
      auto [a, b] = value_endpoints(sig, ctx, *v.second);
      auto [b2, c] = value_endpoints(sig, ctx, *v.first);
      if (!(b == b2))
        fail(ErrorCode::EndpointMismatch, "composition meets " + to_string(b) + " and " + to_string(b2));
      return {a, c};
    }
    case K::ReflParam:
      if (!ctx.find_type(v.name)) fail(ErrorCode::UnboundTypeParam, v.name);
      return {ValueType::param(v.name), ValueType::param(v.name)};
    case K::ReflUnit:
      return {ValueType::unit(), ValueType::unit()};
    case K::ReflBase:
      if (!sig.has_base(v.name)) fail(ErrorCode::UnknownBase, v.name);
      return {ValueType::base(v.name), ValueType::base(v.name)};
    case K::Arrow: {
      // arg : B <= A and res : C <= D give (A -> C) <= (B -> D)
      auto [b, a] = value_endpoints(sig, ctx, *v.first);
      auto [c, d] = comp_endpoints(sig, ctx, *v.res);
      return {ValueType::arrow(a, c), ValueType::arrow(b, d)};
    }
  }
  fail(ErrorCode::Internal, "value coercion kind");
}

}  // namespace

bool is_closed(const Dirt& d) { return !d.tail; }

bool is_closed(const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param:
      return false;
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return true;
    case ValueType::Kind::Arrow:
      return is_closed(a.argument()) && is_closed(a.result().value) && is_closed(a.result().dirt);
  }
  return false;
}

Dirt dirt_union(const OpSet& ops, const Dirt& d) {
  Dirt out = d;
  out.ops.insert(ops.begin(), ops.end());
  return out;
}

void wf_skeleton(const ParamContext& ctx, const Skeleton& s, const Signature* sig) {
  switch (s.kind) {
    case Skeleton::Kind::Param:
      if (!ctx.has_skel(s.name)) fail(ErrorCode::UnboundSkeletonParam, s.name);
      return;
    case Skeleton::Kind::Unit:
      return;
    case Skeleton::Kind::Base:
      if (sig && !sig->has_base(s.name)) fail(ErrorCode::UnknownBase, s.name);
      return;
    case Skeleton::Kind::Arrow:
      wf_skeleton(ctx, s.domain(), sig);
      wf_skeleton(ctx, s.codomain(), sig);
      return;
  }
}

void wf_dirt(const Signature& sig, const ParamContext& ctx, const Dirt& d) {
  for (const auto& op : d.ops)
    if (!sig.has_op(op)) fail(ErrorCode::UnknownOperation, op);
  if (d.tail && !ctx.has_dirt(*d.tail)) fail(ErrorCode::UnboundDirtParam, *d.tail);
}

Skeleton skeleton_of_vtype(const Signature& sig, const ParamContext& ctx, const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param: {
      const auto* decl = ctx.find_type(a.name);
      if (!decl) fail(ErrorCode::UnboundTypeParam, a.name);
      return decl->skeleton;
    }
    case ValueType::Kind::Unit:
      return Skeleton::unit();
    case ValueType::Kind::Base:
      if (!sig.has_base(a.name)) fail(ErrorCode::UnknownBase, a.name);
      return Skeleton::base(a.name);
    case ValueType::Kind::Arrow:
      return Skeleton::arrow(skeleton_of_vtype(sig, ctx, a.argument()),
                             skeleton_of_ctype(sig, ctx, a.result()));
  }
  fail(ErrorCode::Internal, "value type kind");
}

Skeleton skeleton_of_ctype(const Signature& sig, const ParamContext& ctx, const CompType& c) {
  wf_dirt(sig, ctx, c.dirt);
  return skeleton_of_vtype(sig, ctx, c.value);
}

void wf_param_context(const Signature& sig, const ParamContext& ctx) {
  std::set<Name> seen;
  ParamContext prefix;
  for (const auto& s : ctx.skels) {
    check_name(seen, s);
    seen.insert(s);
    prefix.skels.push_back(s);
  }
  for (const auto& d : ctx.dirts) {
    check_name(seen, d);
    seen.insert(d);
    prefix.dirts.push_back(d);
  }
  for (const auto& t : ctx.types) {
    check_name(seen, t.name);
    wf_skeleton(prefix, t.skeleton, &sig);
    seen.insert(t.name);
    prefix.types.push_back(t);
  }
  for (const auto& c : ctx.dirt_coercions) {
    check_name(seen, c.name);
    wf_dirt(sig, prefix, c.lhs);
    wf_dirt(sig, prefix, c.rhs);
    seen.insert(c.name);
  }
  for (const auto& c : ctx.type_coercions) {
    check_name(seen, c.name);
    Skeleton l = skeleton_of_vtype(sig, prefix, c.lhs);
    Skeleton r = skeleton_of_vtype(sig, prefix, c.rhs);
    if (!(l == r))
      fail(ErrorCode::SkeletonMismatch, c.name + " relates " + to_string(l) + " and " + to_string(r));
    seen.insert(c.name);
  }
}

void wf_typing_context(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma) {
  for (const auto& b : gamma.bindings) skeleton_of_vtype(sig, ctx, b.type);
}

std::pair<Dirt, Dirt> check_dirt_coercion(const Signature& sig, const ParamContext& ctx,
                                          const DirtCoercion& d) {
  using K = DirtCoercion::Kind;
  switch (d.kind) {
    case K::Param: {
      const auto* decl = ctx.find_dirt_coercion(d.name);
      if (!decl) fail(ErrorCode::UnboundCoercionParam, d.name);
      return {decl->lhs, decl->rhs};
    }
    case K::Compose: {
      auto [a, b] = check_dirt_coercion(sig, ctx, *d.second);
      auto [b2, c] = check_dirt_coercion(sig, ctx, *d.first);
      if (!(b == b2))
        fail(ErrorCode::EndpointMismatch, "composition meets " + to_string(b) + " and " + to_string(b2));
      return {a, c};
    }
    case K::ReflParam:
      if (!ctx.has_dirt(d.name)) fail(ErrorCode::UnboundDirtParam, d.name);
      return {Dirt::param(d.name), Dirt::param(d.name)};
    case K::ReflEmpty:
      return {Dirt::empty(), Dirt::empty()};
    case K::EmptyUnder:
      if (!ctx.has_dirt(d.name)) fail(ErrorCode::UnboundDirtParam, d.name);
      return {Dirt::empty(), Dirt::param(d.name)};
    case K::UnionBoth: {
      if (!sig.has_op(d.name)) fail(ErrorCode::UnknownOperation, d.name);
      auto [a, b] = check_dirt_coercion(sig, ctx, *d.first);
      return {dirt_union({d.name}, a), dirt_union({d.name}, b)};
    }
    case K::UnionRight: {
      if (!sig.has_op(d.name)) fail(ErrorCode::UnknownOperation, d.name);
      auto [a, b] = check_dirt_coercion(sig, ctx, *d.first);
      return {a, dirt_union({d.name}, b)};
    }
  }
  fail(ErrorCode::Internal, "dirt coercion kind");
}

std::pair<ValueType, ValueType> check_value_coercion(const Signature& sig, const ParamContext& ctx,
                                                     const ValueCoercion& v) {
  auto ends = value_endpoints(sig, ctx, v);
  Skeleton l = skeleton_of_vtype(sig, ctx, ends.first);
  Skeleton r = skeleton_of_vtype(sig, ctx, ends.second);
  if (!(l == r)) fail(ErrorCode::SkeletonMismatch, to_string(l) + " vs " + to_string(r));
  return ends;
}

std::pair<CompType, CompType> check_comp_coercion(const Signature& sig, const ParamContext& ctx,
                                                  const CompCoercion& c) {
  auto ends = comp_endpoints(sig, ctx, c);
  Skeleton l = skeleton_of_ctype(sig, ctx, ends.first);
  Skeleton r = skeleton_of_ctype(sig, ctx, ends.second);
  if (!(l == r)) fail(ErrorCode::SkeletonMismatch, to_string(l) + " vs " + to_string(r));
  return ends;
}

DirtCoercion derived_refl(const Dirt& d) {
  DirtCoercion base = d.tail ? DirtCoercion::refl_param(*d.tail) : DirtCoercion::refl_empty();
  return union_both(d.ops, std::move(base));
}

DirtCoercion derived_empty(const Dirt& d) {
  DirtCoercion base = d.tail ? DirtCoercion::empty_under(*d.tail) : DirtCoercion::refl_empty();
  return union_right(d.ops, std::move(base));
}

ValueCoercion derived_refl(const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param:
      return ValueCoercion::refl_param(a.name);
    case ValueType::Kind::Unit:
      return ValueCoercion::refl_unit();
    case ValueType::Kind::Base:
      return ValueCoercion::refl_base(a.name);
    case ValueType::Kind::Arrow:
      return ValueCoercion::arrow(derived_refl(a.argument()), derived_refl(a.result()));
  }
  fail(ErrorCode::Internal, "value type kind");
}

CompCoercion derived_refl(const CompType& c) {
  return CompCoercion{derived_refl(c.value), derived_refl(c.dirt)};
}

std::optional<DirtCoercion> synthesize_coercion(const Dirt& lhs, const Dirt& rhs) {
  if (!std::includes(rhs.ops.begin(), rhs.ops.end(), lhs.ops.begin(), lhs.ops.end())) return std::nullopt;
  DirtCoercion base;
  if (lhs.tail) {
    if (lhs.tail != rhs.tail) return std::nullopt;
    base = DirtCoercion::refl_param(*lhs.tail);
  } else if (rhs.tail) {
    base = DirtCoercion::empty_under(*rhs.tail);
  } else {
    base = DirtCoercion::refl_empty();
  }
  return union_both(lhs.ops, union_right(minus(rhs.ops, lhs.ops), std::move(base)));
}

std::optional<ValueCoercion> synthesize_coercion(const ValueType& lhs, const ValueType& rhs) {
  if (lhs.kind != rhs.kind) return std::nullopt;
  switch (lhs.kind) {
    case ValueType::Kind::Param:
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      if (!(lhs == rhs)) return std::nullopt;
      return derived_refl(lhs);
    case ValueType::Kind::Arrow: {
      auto arg = synthesize_coercion(rhs.argument(), lhs.argument());
      if (!arg) return std::nullopt;
      auto res = synthesize_coercion(lhs.result(), rhs.result());
      if (!res) return std::nullopt;
      return ValueCoercion::arrow(*arg, *res);
    }
  }
  return std::nullopt;
}

std::optional<CompCoercion> synthesize_coercion(const CompType& lhs, const CompType& rhs) {
  auto v = synthesize_coercion(lhs.value, rhs.value);
  if (!v) return std::nullopt;
  auto d = synthesize_coercion(lhs.dirt, rhs.dirt);
  if (!d) return std::nullopt;
  return CompCoercion{*v, *d};
}

ValueType typecheck_value(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma,
                          const ValueTerm& v) {
  switch (v.kind) {
    case ValueTerm::Kind::Var: {
      const ValueType* t = gamma.lookup(v.var);
      if (!t) fail(ErrorCode::UnboundVar, v.var);
      return *t;
    }
    case ValueTerm::Kind::Unit:
      return ValueType::unit();
    case ValueTerm::Kind::Lambda: {
      skeleton_of_vtype(sig, ctx, *v.annot);
      TypingContext inner = gamma;
      inner.bindings.push_back({v.var, *v.annot});
      return ValueType::arrow(*v.annot, typecheck_comp(sig, ctx, inner, *v.body));
    }
    case ValueTerm::Kind::Cast: {
      ValueType a = typecheck_value(sig, ctx, gamma, *v.inner);
      auto [from, to] = check_value_coercion(sig, ctx, *v.coercion);
      if (!(a == from))
        fail(ErrorCode::TypeMismatch, "cast expects " + to_string(from) + " but value has " + to_string(a));
      return to;
    }
  }
  fail(ErrorCode::Internal, "value term kind");
}

CompType typecheck_comp(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma,
                        const CompTerm& c) {
  switch (c.kind) {
    case CompTerm::Kind::Return:
      return CompType{typecheck_value(sig, ctx, gamma, *c.v1), Dirt::empty()};
    case CompTerm::Kind::OpCall: {
      const OpSignature& os = sig.op(c.name);
      ValueType a = typecheck_value(sig, ctx, gamma, *c.v1);
      if (!(a == os.param))
        fail(ErrorCode::TypeMismatch, c.name + " expects " + to_string(os.param) + ", got " + to_string(a));
      if (!(*c.annot == os.result))
        fail(ErrorCode::TypeMismatch, c.name + " returns " + to_string(os.result) + ", binder says " +
                                          to_string(*c.annot));
      TypingContext inner = gamma;
      inner.bindings.push_back({c.bindvar, *c.annot});
      CompType k = typecheck_comp(sig, ctx, inner, *c.c1);
      if (!k.dirt.ops.count(c.name))
        fail(ErrorCode::OpNotInDirt, c.name + " not in " + to_string(k.dirt));
      return k;
    }
    case CompTerm::Kind::Do: {
      CompType first = typecheck_comp(sig, ctx, gamma, *c.c1);
      TypingContext inner = gamma;
      inner.bindings.push_back({c.name, first.value});
      CompType rest = typecheck_comp(sig, ctx, inner, *c.c2);
      if (!(first.dirt == rest.dirt))
        fail(ErrorCode::TypeMismatch, "do sequences dirts " + to_string(first.dirt) + " and " +
                                          to_string(rest.dirt));
      return rest;
    }
    case CompTerm::Kind::App: {
      ValueType f = typecheck_value(sig, ctx, gamma, *c.v1);
      if (f.kind != ValueType::Kind::Arrow) fail(ErrorCode::NotAFunction, to_string(f));
      ValueType a = typecheck_value(sig, ctx, gamma, *c.v2);
      if (!(a == f.argument()))
        fail(ErrorCode::TypeMismatch, "argument " + to_string(a) + " for " + to_string(f));
      return f.result();
    }
    case CompTerm::Kind::LetVal: {
      ValueType a = typecheck_value(sig, ctx, gamma, *c.v1);
      TypingContext inner = gamma;
      inner.bindings.push_back({c.name, a});
      return typecheck_comp(sig, ctx, inner, *c.c1);
    }
    case CompTerm::Kind::Cast: {
      CompType t = typecheck_comp(sig, ctx, gamma, *c.c1);
      auto [from, to] = check_comp_coercion(sig, ctx, *c.coercion);
      if (!(t == from))
        fail(ErrorCode::TypeMismatch, "cast expects " + to_string(from) + " but computation has " +
                                          to_string(t));
      return to;
    }
  }
  fail(ErrorCode::Internal, "computation term kind");
}

}  // namespace coreeff
