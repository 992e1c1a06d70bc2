#pragma once

#include <compare>
#include <map>
#include <set>

#include "coreeff/subst.hpp"

namespace coreeff {

enum class ParamSort { Type, Dirt };

struct ParamRef {
  ParamSort sort;
  Name name;
  auto operator<=>(const ParamRef&) const = default;
};

inline ParamRef type_ref(Name n) { return {ParamSort::Type, std::move(n)}; }
inline ParamRef dirt_ref(Name n) { return {ParamSort::Dirt, std::move(n)}; }

struct FreeParamSet {
  std::set<ParamRef> pos, neg;

  FreeParamSet swapped() const { return {neg, pos}; }
  FreeParamSet& unite(const FreeParamSet& other);
  bool is_pos(const ParamRef& p) const { return pos.count(p) != 0; }
  bool is_neg(const ParamRef& p) const { return neg.count(p) != 0; }
  std::set<ParamRef> all() const;
  friend bool operator==(const FreeParamSet&, const FreeParamSet&) = default;
};

FreeParamSet free_params(const ValueType& a);
FreeParamSet free_params(const CompType& c);
FreeParamSet free_params(const Dirt& d);
FreeParamSet free_params(const TypingContext& gamma);

FreeParamSet subst_fps(const Substitution& s, const FreeParamSet& f);

struct CoercionFamily {
  std::map<Name, ValueCoercion> ty;
  std::map<Name, DirtCoercion> dirt;
  friend bool operator==(const CoercionFamily&, const CoercionFamily&) = default;
};

// Accepts iff Y relates s1 and s2 relative to f in ctx: positive params are
// coerced s1 -> s2, negative ones s2 -> s1. Neutral params are not checked.
void check_family(const Signature& sig, const ParamContext& ctx, const CoercionFamily& y,
                  const Substitution& s1, const Substitution& s2, const FreeParamSet& f);

DirtCoercion extend_family(const CoercionFamily& y, const Dirt& d);
ValueCoercion extend_family(const CoercionFamily& y, const ValueType& a);
CompCoercion extend_family(const CoercionFamily& y, const CompType& c);

std::pair<CoercionFamily, FreeParamSet> invert_family(const CoercionFamily& y, const FreeParamSet& f);

// y1 relates s1 to s2, y2 relates s2 to s3; the result relates s1 to s3.
// Negative-only params compose in the opposite order, which keeps the
// endpoints lined up.
CoercionFamily compose_families(const CoercionFamily& y2, const CoercionFamily& y1, const FreeParamSet& f);

// {a -> Y(s(a))} for every a in f.
CoercionFamily precompose_family(const CoercionFamily& y, const Substitution& s, const FreeParamSet& f);

// {a -> refl(s(a))} for every a in f.
CoercionFamily refl_family(const Substitution& s, const FreeParamSet& f);

// Composition that drops reflexive factors.
ValueCoercion compose_coercions(const ValueCoercion& outer, const ValueCoercion& inner);
DirtCoercion compose_coercions(const DirtCoercion& outer, const DirtCoercion& inner);
bool is_reflexive(const ValueCoercion& v);
bool is_reflexive(const DirtCoercion& d);

}  // namespace coreeff
