#pragma once

#include <map>

#include "coreeff/syntax.hpp"

namespace coreeff {

// Unmapped parameters stand for themselves.
struct Substitution {
  std::map<Name, Skeleton> skels;
  std::map<Name, Dirt> dirts;
  std::map<Name, ValueType> types;
  std::map<Name, ValueCoercion> tycos;
  std::map<Name, DirtCoercion> dircos;

  bool empty() const;
  bool maps(const Name& p) const;
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

Skeleton apply(const Substitution& s, const Skeleton& x);
Dirt apply(const Substitution& s, const Dirt& x);
ValueType apply(const Substitution& s, const ValueType& x);
CompType apply(const Substitution& s, const CompType& x);
DirtCoercion apply(const Substitution& s, const DirtCoercion& x);
ValueCoercion apply(const Substitution& s, const ValueCoercion& x);
CompCoercion apply(const Substitution& s, const CompCoercion& x);
TypingContext apply(const Substitution& s, const TypingContext& x);
ValueTerm apply(const Substitution& s, const ValueTerm& x);
CompTerm apply(const Substitution& s, const CompTerm& x);
// Drops every parameter the substitution maps elsewhere and substitutes
// into the classifiers of the survivors.
ParamContext apply(const Substitution& s, const ParamContext& x);

void check_validity(const Signature& sig, const Substitution& s, const ParamContext& src,
                    const ParamContext& dst);

Substitution compose(const Substitution& outer, const Substitution& inner);
Substitution remove(const Substitution& s, const Name& p);
// Keeps only the mappings of parameters bound in ctx.
Substitution restrict_to(const Substitution& s, const ParamContext& ctx);

}  // namespace coreeff
