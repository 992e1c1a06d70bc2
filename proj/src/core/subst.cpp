#include "coreeff/subst.hpp"

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/print.hpp"

namespace coreeff {

namespace {

template <typename M>
void drop_identities(M& m, auto is_identity) {
  for (auto it = m.begin(); it != m.end();) {
    if (is_identity(it->first, it->second))
      it = m.erase(it);
    else
      ++it;
  }
}

bool param_survives(const Substitution& s, const Name& p) { return !s.maps(p); }

}  // namespace

bool Substitution::empty() const {
  return skels.empty() && dirts.empty() && types.empty() && tycos.empty() && dircos.empty();
}

bool Substitution::maps(const Name& p) const {
  return skels.count(p) || dirts.count(p) || types.count(p) || tycos.count(p) || dircos.count(p);
}

Skeleton apply(const Substitution& s, const Skeleton& x) {
  switch (x.kind) {
    case Skeleton::Kind::Param: {
      auto it = s.skels.find(x.name);
      return it == s.skels.end() ? x : it->second;
    }
    case Skeleton::Kind::Unit:
    case Skeleton::Kind::Base:
      return x;
    case Skeleton::Kind::Arrow:
      return Skeleton::arrow(apply(s, x.domain()), apply(s, x.codomain()));
  }
  return x;
}

Dirt apply(const Substitution& s, const Dirt& x) {
  if (!x.tail) return x;
  auto it = s.dirts.find(*x.tail);
  if (it == s.dirts.end()) return x;
  return dirt_union(x.ops, it->second);
}

ValueType apply(const Substitution& s, const ValueType& x) {
  switch (x.kind) {
    case ValueType::Kind::Param: {
      auto it = s.types.find(x.name);
      return it == s.types.end() ? x : it->second;
    }
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return x;
    case ValueType::Kind::Arrow:
      return ValueType::arrow(apply(s, x.argument()), apply(s, x.result()));
  }
  return x;
}

CompType apply(const Substitution& s, const CompType& x) {
  return CompType{apply(s, x.value), apply(s, x.dirt)};
}

DirtCoercion apply(const Substitution& s, const DirtCoercion& x) {
  using K = DirtCoercion::Kind;
  switch (x.kind) {
    case K::Param: {
      auto it = s.dircos.find(x.name);
      return it == s.dircos.end() ? x : it->second;
    }
    case K::Compose:
      return DirtCoercion::compose(apply(s, *x.first), apply(s, *x.second));
    case K::ReflParam: {
      Dirt img = apply(s, Dirt::param(x.name));
      return img.is_param() ? DirtCoercion::refl_param(*img.tail) : derived_refl(img);
    }
    case K::ReflEmpty:
      return x;
    case K::EmptyUnder: {
      Dirt img = apply(s, Dirt::param(x.name));
      return img.is_param() ? DirtCoercion::empty_under(*img.tail) : derived_empty(img);
    }
    case K::UnionBoth:
      return DirtCoercion::union_both(x.name, apply(s, *x.first));
    case K::UnionRight:
      return DirtCoercion::union_right(x.name, apply(s, *x.first));
  }
  return x;
}

ValueCoercion apply(const Substitution& s, const ValueCoercion& x) {
  using K = ValueCoercion::Kind;
  switch (x.kind) {
    case K::Param: {
      auto it = s.tycos.find(x.name);
      return it == s.tycos.end() ? x : it->second;
    }
    case K::Compose:
      return ValueCoercion::compose(apply(s, *x.first), apply(s, *x.second));
    case K::ReflParam: {
      ValueType img = apply(s, ValueType::param(x.name));
      return img.is_param() ? ValueCoercion::refl_param(img.name) : derived_refl(img);
    }
    case K::ReflUnit:
    case K::ReflBase:
      return x;
    case K::Arrow:
      return ValueCoercion::arrow(apply(s, *x.first), apply(s, *x.res));
  }
  return x;
}

CompCoercion apply(const Substitution& s, const CompCoercion& x) {
  return CompCoercion{apply(s, x.value), apply(s, x.dirt)};
}

TypingContext apply(const Substitution& s, const TypingContext& x) {
  TypingContext out;
  for (const auto& b : x.bindings) out.bindings.push_back({b.var, apply(s, b.type)});
  return out;
}

ValueTerm apply(const Substitution& s, const ValueTerm& x) {
  switch (x.kind) {
    case ValueTerm::Kind::Var:
    case ValueTerm::Kind::Unit:
      return x;
    case ValueTerm::Kind::Lambda:
      return ValueTerm::lambda(x.var, apply(s, *x.annot), apply(s, *x.body));
    case ValueTerm::Kind::Cast:
      return ValueTerm::cast(apply(s, *x.inner), apply(s, *x.coercion));
  }
  return x;
}

CompTerm apply(const Substitution& s, const CompTerm& x) {
  switch (x.kind) {
    case CompTerm::Kind::Return:
      return CompTerm::ret(apply(s, *x.v1));
    case CompTerm::Kind::OpCall:
      return CompTerm::op_call(x.name, apply(s, *x.v1), x.bindvar, apply(s, *x.annot), apply(s, *x.c1));
    case CompTerm::Kind::Do:
      return CompTerm::do_(x.name, apply(s, *x.c1), apply(s, *x.c2));
    case CompTerm::Kind::App:
      return CompTerm::app(apply(s, *x.v1), apply(s, *x.v2));
    case CompTerm::Kind::LetVal:
      return CompTerm::let(x.name, apply(s, *x.v1), apply(s, *x.c1));
    case CompTerm::Kind::Cast:
      return CompTerm::cast(apply(s, *x.c1), apply(s, *x.coercion));
  }
  return x;
}

ParamContext apply(const Substitution& s, const ParamContext& x) {
  ParamContext out;
  for (const auto& p : x.skels)
    if (param_survives(s, p)) out.skels.push_back(p);
  for (const auto& p : x.dirts)
    if (param_survives(s, p)) out.dirts.push_back(p);
  for (const auto& t : x.types)
    if (param_survives(s, t.name)) out.types.push_back({t.name, apply(s, t.skeleton)});
  for (const auto& c : x.dirt_coercions)
    if (param_survives(s, c.name)) out.dirt_coercions.push_back({c.name, apply(s, c.lhs), apply(s, c.rhs)});
  for (const auto& c : x.type_coercions)
    if (param_survives(s, c.name)) out.type_coercions.push_back({c.name, apply(s, c.lhs), apply(s, c.rhs)});
  return out;
}

void check_validity(const Signature& sig, const Substitution& s, const ParamContext& src,
                    const ParamContext& dst) {
  auto rethrow = [](const Name& p, const Error& e) -> void {
    fail(e.code(), "parameter " + p + ": " + e.detail());
  };
  for (const auto& p : src.skels) {
    auto it = s.skels.find(p);
    if (it == s.skels.end()) {
      if (!dst.has_skel(p)) fail(ErrorCode::UnmappedParam, p);
      continue;
    }
    try {
      wf_skeleton(dst, it->second, &sig);
    } catch (const Error& e) {
      rethrow(p, e);
    }
  }
  for (const auto& p : src.dirts) {
    auto it = s.dirts.find(p);
    if (it == s.dirts.end()) {
      if (!dst.has_dirt(p)) fail(ErrorCode::UnmappedParam, p);
      continue;
    }
    try {
      wf_dirt(sig, dst, it->second);
    } catch (const Error& e) {
      rethrow(p, e);
    }
  }
  for (const auto& t : src.types) {
    Skeleton want = apply(s, t.skeleton);
    auto it = s.types.find(t.name);
    if (it == s.types.end() && !dst.find_type(t.name)) fail(ErrorCode::UnmappedParam, t.name);
    ValueType img = it == s.types.end() ? ValueType::param(t.name) : it->second;
    Skeleton got;
    try {
      got = skeleton_of_vtype(sig, dst, img);
    } catch (const Error& e) {
      rethrow(t.name, e);
    }
    if (!(got == want))
      fail(ErrorCode::WrongSkeleton, t.name + " has skeleton " + to_string(got) + ", expected " +
                                         to_string(want));
  }
  for (const auto& c : src.dirt_coercions) {
    auto it = s.dircos.find(c.name);
    if (it == s.dircos.end() && !dst.find_dirt_coercion(c.name)) fail(ErrorCode::UnmappedParam, c.name);
    DirtCoercion img = it == s.dircos.end() ? DirtCoercion::param(c.name) : it->second;
    std::pair<Dirt, Dirt> ends;
    try {
      ends = check_dirt_coercion(sig, dst, img);
    } catch (const Error& e) {
      rethrow(c.name, e);
    }
    Dirt l = apply(s, c.lhs), r = apply(s, c.rhs);
    if (!(ends.first == l && ends.second == r))
      fail(ErrorCode::WrongEndpoints, c.name + " witnesses " + to_string(ends.first) + " <= " +
                                          to_string(ends.second) + ", expected " + to_string(l) +
                                          " <= " + to_string(r));
  }
  for (const auto& c : src.type_coercions) {
    auto it = s.tycos.find(c.name);
    if (it == s.tycos.end() && !dst.find_type_coercion(c.name)) fail(ErrorCode::UnmappedParam, c.name);
    ValueCoercion img = it == s.tycos.end() ? ValueCoercion::param(c.name) : it->second;
    std::pair<ValueType, ValueType> ends;
    try {
      ends = check_value_coercion(sig, dst, img);
    } catch (const Error& e) {
      rethrow(c.name, e);
    }
    ValueType l = apply(s, c.lhs), r = apply(s, c.rhs);
    if (!(ends.first == l && ends.second == r))
      fail(ErrorCode::WrongEndpoints, c.name + " witnesses " + to_string(ends.first) + " <= " +
                                          to_string(ends.second) + ", expected " + to_string(l) +
                                          " <= " + to_string(r));
  }
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution out = outer;
  for (const auto& [k, v] : inner.skels) out.skels[k] = apply(outer, v);
  for (const auto& [k, v] : inner.dirts) out.dirts[k] = apply(outer, v);
  for (const auto& [k, v] : inner.types) out.types[k] = apply(outer, v);
  for (const auto& [k, v] : inner.tycos) out.tycos[k] = apply(outer, v);
  for (const auto& [k, v] : inner.dircos) out.dircos[k] = apply(outer, v);
  drop_identities(out.skels, [](const Name& k, const Skeleton& v) { return v.is_param() && v.name == k; });
  drop_identities(out.dirts, [](const Name& k, const Dirt& v) { return v.is_param() && *v.tail == k; });
  drop_identities(out.types, [](const Name& k, const ValueType& v) { return v.is_param() && v.name == k; });
  drop_identities(out.tycos, [](const Name& k, const ValueCoercion& v) {
    return v.kind == ValueCoercion::Kind::Param && v.name == k;
  });
  drop_identities(out.dircos, [](const Name& k, const DirtCoercion& v) {
    return v.kind == DirtCoercion::Kind::Param && v.name == k;
  });
  return out;
}

Substitution remove(const Substitution& s, const Name& p) {
  Substitution out = s;
  out.skels.erase(p);
  out.dirts.erase(p);
  out.types.erase(p);
  out.tycos.erase(p);
  out.dircos.erase(p);
  return out;
}

Substitution restrict_to(const Substitution& s, const ParamContext& ctx) {
  Substitution out;
  for (const auto& p : ctx.skels)
    if (auto it = s.skels.find(p); it != s.skels.end()) out.skels.insert(*it);
  for (const auto& p : ctx.dirts)
    if (auto it = s.dirts.find(p); it != s.dirts.end()) out.dirts.insert(*it);
  for (const auto& t : ctx.types)
    if (auto it = s.types.find(t.name); it != s.types.end()) out.types.insert(*it);
  for (const auto& c : ctx.dirt_coercions)
    if (auto it = s.dircos.find(c.name); it != s.dircos.end()) out.dircos.insert(*it);
  for (const auto& c : ctx.type_coercions)
    if (auto it = s.tycos.find(c.name); it != s.tycos.end()) out.tycos.insert(*it);
  return out;
}

}  // namespace coreeff
