#pragma once

#include <utility>

#include "coreeff/syntax.hpp"

namespace coreeff {

// Well-formedness. Each checker throws coreeff::Error on rejection.
void wf_skeleton(const ParamContext& ctx, const Skeleton& s, const Signature* sig = nullptr);
void wf_dirt(const Signature& sig, const ParamContext& ctx, const Dirt& d);
void wf_param_context(const Signature& sig, const ParamContext& ctx);
void wf_typing_context(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma);

Skeleton skeleton_of_vtype(const Signature& sig, const ParamContext& ctx, const ValueType& a);
Skeleton skeleton_of_ctype(const Signature& sig, const ParamContext& ctx, const CompType& c);

std::pair<Dirt, Dirt> check_dirt_coercion(const Signature& sig, const ParamContext& ctx,
                                          const DirtCoercion& d);
std::pair<ValueType, ValueType> check_value_coercion(const Signature& sig, const ParamContext& ctx,
                                                     const ValueCoercion& v);
std::pair<CompType, CompType> check_comp_coercion(const Signature& sig, const ParamContext& ctx,
                                                  const CompCoercion& c);

DirtCoercion derived_refl(const Dirt& d);
ValueCoercion derived_refl(const ValueType& a);
CompCoercion derived_refl(const CompType& c);
DirtCoercion derived_empty(const Dirt& d);

// Builds a coercion lhs <= rhs by structural subtyping, if one exists.
// Type parameters only relate to themselves.
std::optional<DirtCoercion> synthesize_coercion(const Dirt& lhs, const Dirt& rhs);
std::optional<ValueCoercion> synthesize_coercion(const ValueType& lhs, const ValueType& rhs);
std::optional<CompCoercion> synthesize_coercion(const CompType& lhs, const CompType& rhs);

ValueType typecheck_value(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma,
                          const ValueTerm& v);
CompType typecheck_comp(const Signature& sig, const ParamContext& ctx, const TypingContext& gamma,
                        const CompTerm& c);

// Dirt union in canonical form; tails must agree or one side must be closed.
Dirt dirt_union(const OpSet& ops, const Dirt& d);

bool is_closed(const ValueType& a);
bool is_closed(const Dirt& d);

}  // namespace coreeff
