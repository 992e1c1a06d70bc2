#pragma once

#include <random>

#include "coreeff/subst.hpp"

namespace coreeff {

// A random ground instantiation of ctx: every parameter is mapped to closed
// syntax and every coercion parameter to a closed coercion between the
// instantiated endpoints. Skeletons are drawn from {Unit, bool, int,
// bool -> bool}; dirts are random subsets of the signature's operations,
// shrunk until all constraints hold.
Substitution sample_instantiation(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng);

}  // namespace coreeff
