#include "coreeff/polarity.hpp"

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/print.hpp"

namespace coreeff {

FreeParamSet& FreeParamSet::unite(const FreeParamSet& other) {
  pos.insert(other.pos.begin(), other.pos.end());
  neg.insert(other.neg.begin(), other.neg.end());
  return *this;
}

std::set<ParamRef> FreeParamSet::all() const {
  std::set<ParamRef> out = pos;
  out.insert(neg.begin(), neg.end());
  return out;
}

FreeParamSet free_params(const Dirt& d) {
  FreeParamSet f;
  if (d.tail) f.pos.insert(dirt_ref(*d.tail));
  return f;
}

FreeParamSet free_params(const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param: {
      FreeParamSet f;
      f.pos.insert(type_ref(a.name));
      return f;
    }
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return {};
    case ValueType::Kind::Arrow:
      return free_params(a.argument()).swapped().unite(free_params(a.result()));
  }
  return {};
}

FreeParamSet free_params(const CompType& c) { return free_params(c.value).unite(free_params(c.dirt)); }

FreeParamSet free_params(const TypingContext& gamma) {
  FreeParamSet f;
  for (const auto& b : gamma.bindings) f.unite(free_params(b.type));
  return f;
}

namespace {

FreeParamSet fp_image(const Substitution& s, const ParamRef& p) {
  if (p.sort == ParamSort::Type) return free_params(apply(s, ValueType::param(p.name)));
  return free_params(apply(s, Dirt::param(p.name)));
}

}  // namespace

FreeParamSet subst_fps(const Substitution& s, const FreeParamSet& f) {
  FreeParamSet out;
  for (const auto& p : f.pos) out.unite(fp_image(s, p));
  FreeParamSet negs;
  for (const auto& p : f.neg) negs.unite(fp_image(s, p));
  return out.unite(negs.swapped());
}

void check_family(const Signature& sig, const ParamContext& ctx, const CoercionFamily& y,
                  const Substitution& s1, const Substitution& s2, const FreeParamSet& f) {
  for (const auto& p : f.all()) {
    const bool pos = f.is_pos(p), neg = f.is_neg(p);
    auto verdict = [&](const auto& ends, const auto& a1, const auto& a2) {
      const bool forward = ends.first == a1 && ends.second == a2;
      const bool backward = ends.first == a2 && ends.second == a1;
      if ((pos && !forward) || (neg && !backward)) {
        std::string want = pos ? to_string(a1) + " <= " + to_string(a2) : to_string(a2) + " <= " + to_string(a1);
        if (pos && neg && !(a1 == a2)) want = to_string(a1) + " = " + to_string(a2);
        std::string got = to_string(ends.first) + " <= " + to_string(ends.second);
        const bool reversed = (pos && backward) || (neg && forward);
        fail(reversed ? ErrorCode::WrongDirection : ErrorCode::WrongEndpoints,
             p.name + " witnesses " + got + ", expected " + want);
      }
    };
    if (p.sort == ParamSort::Type) {
      auto it = y.ty.find(p.name);
      if (it == y.ty.end()) fail(ErrorCode::MissingFamilyEntry, p.name);
      auto ends = check_value_coercion(sig, ctx, it->second);
      verdict(ends, apply(s1, ValueType::param(p.name)), apply(s2, ValueType::param(p.name)));
    } else {
      auto it = y.dirt.find(p.name);
      if (it == y.dirt.end()) fail(ErrorCode::MissingFamilyEntry, p.name);
      auto ends = check_dirt_coercion(sig, ctx, it->second);
      verdict(ends, apply(s1, Dirt::param(p.name)), apply(s2, Dirt::param(p.name)));
    }
  }
}

DirtCoercion extend_family(const CoercionFamily& y, const Dirt& d) {
  DirtCoercion base = DirtCoercion::refl_empty();
  if (d.tail) {
    auto it = y.dirt.find(*d.tail);
    if (it == y.dirt.end()) fail(ErrorCode::MissingFamilyEntry, *d.tail);
    base = it->second;
  }
  return union_both(d.ops, base);
}

ValueCoercion extend_family(const CoercionFamily& y, const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param: {
      auto it = y.ty.find(a.name);
      if (it == y.ty.end()) fail(ErrorCode::MissingFamilyEntry, a.name);
      return it->second;
    }
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return derived_refl(a);
    case ValueType::Kind::Arrow:
      return ValueCoercion::arrow(extend_family(y, a.argument()), extend_family(y, a.result()));
  }
  fail(ErrorCode::Internal, "value type kind");
}

CompCoercion extend_family(const CoercionFamily& y, const CompType& c) {
  return CompCoercion{extend_family(y, c.value), extend_family(y, c.dirt)};
}

std::pair<CoercionFamily, FreeParamSet> invert_family(const CoercionFamily& y, const FreeParamSet& f) {
  return {y, f.swapped()};
}

bool is_reflexive(const DirtCoercion& d) {
  using K = DirtCoercion::Kind;
  switch (d.kind) {
    case K::ReflParam:
    case K::ReflEmpty:
      return true;
    case K::UnionBoth:
      return is_reflexive(*d.first);
    default:
      return false;
  }
}

bool is_reflexive(const ValueCoercion& v) {
  using K = ValueCoercion::Kind;
  switch (v.kind) {
    case K::ReflParam:
    case K::ReflUnit:
    case K::ReflBase:
      return true;
    case K::Arrow:
      return is_reflexive(*v.first) && is_reflexive(v.res->value) && is_reflexive(v.res->dirt);
    default:
      return false;
  }
}

ValueCoercion compose_coercions(const ValueCoercion& outer, const ValueCoercion& inner) {
  if (is_reflexive(outer)) return inner;
  if (is_reflexive(inner)) return outer;
  return ValueCoercion::compose(outer, inner);
}

DirtCoercion compose_coercions(const DirtCoercion& outer, const DirtCoercion& inner) {
  if (is_reflexive(outer)) return inner;
  if (is_reflexive(inner)) return outer;
  return DirtCoercion::compose(outer, inner);
}

CoercionFamily compose_families(const CoercionFamily& y2, const CoercionFamily& y1, const FreeParamSet& f) {
  CoercionFamily out;
  for (const auto& p : f.all()) {
    const bool flip = f.is_neg(p) && !f.is_pos(p);
    if (p.sort == ParamSort::Type) {
      auto a = y1.ty.find(p.name), b = y2.ty.find(p.name);
      if (a == y1.ty.end() || b == y2.ty.end()) fail(ErrorCode::MissingFamilyEntry, p.name);
      out.ty.emplace(p.name, flip ? compose_coercions(a->second, b->second) : compose_coercions(b->second, a->second));
    } else {
      auto a = y1.dirt.find(p.name), b = y2.dirt.find(p.name);
      if (a == y1.dirt.end() || b == y2.dirt.end()) fail(ErrorCode::MissingFamilyEntry, p.name);
      out.dirt.emplace(p.name,
                       flip ? compose_coercions(a->second, b->second) : compose_coercions(b->second, a->second));
    }
  }
  return out;
}

CoercionFamily precompose_family(const CoercionFamily& y, const Substitution& s, const FreeParamSet& f) {
  CoercionFamily out;
  for (const auto& p : f.all()) {
    if (p.sort == ParamSort::Type)
      out.ty.emplace(p.name, extend_family(y, apply(s, ValueType::param(p.name))));
    else
      out.dirt.emplace(p.name, extend_family(y, apply(s, Dirt::param(p.name))));
  }
  return out;
}

CoercionFamily refl_family(const Substitution& s, const FreeParamSet& f) {
  CoercionFamily out;
  for (const auto& p : f.all()) {
    if (p.sort == ParamSort::Type)
      out.ty.emplace(p.name, derived_refl(apply(s, ValueType::param(p.name))));
    else
      out.dirt.emplace(p.name, derived_refl(apply(s, Dirt::param(p.name))));
  }
  return out;
}

}  // namespace coreeff
