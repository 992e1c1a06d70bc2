#pragma once

#include <vector>

#include "coreeff/names.hpp"
#include "coreeff/subst.hpp"

namespace coreeff {

struct ReductionResult {
  ParamContext context;
  Substitution subst;
};

struct TypeParamReduction {
  std::vector<TypeParamDecl> types;
  std::vector<Name> dirts;
  Substitution subst;
};

struct TypeConstraintReduction {
  std::vector<TypeCoercionDecl> type_coercions;
  std::vector<DirtCoercionDecl> dirt_coercions;
  Substitution subst;
};

struct DirtConstraintReduction {
  std::vector<DirtCoercionDecl> dirt_coercions;
  std::vector<Name> dirts;
  Substitution subst;
};

// The three reduction stages. Each extends the accumulators it is given
// and returns the substitution composed onto `acc`.
TypeParamReduction reduce_type_params(const std::vector<TypeParamDecl>& types, std::vector<Name> dirts,
                                      NameSupply& names);
TypeConstraintReduction reduce_type_constraints(const Signature& sig,
                                                const std::vector<TypeCoercionDecl>& constraints,
                                                std::vector<DirtCoercionDecl> dirt_coercions,
                                                const Substitution& acc, NameSupply& names);
DirtConstraintReduction reduce_dirt_constraints(std::vector<DirtCoercionDecl> constraints,
                                                std::vector<Name> dirts, const Substitution& acc,
                                                NameSupply& names);

ReductionResult reduce_context(const Signature& sig, const ParamContext& ctx, NameSupply* names = nullptr);

// Canonical: type params over skeleton params, type coercions between
// params, dirt coercions with a bare parameter on the left.
bool is_canonical(const ParamContext& ctx);

}  // namespace coreeff
