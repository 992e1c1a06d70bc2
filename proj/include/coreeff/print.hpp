#pragma once

#include <string>

#include "coreeff/syntax.hpp"

namespace coreeff {

// Diagnostic renderings (ASCII).
std::string to_string(const Skeleton& s);
std::string to_string(const Dirt& d);
std::string to_string(const ValueType& a);
std::string to_string(const CompType& c);
std::string to_string(const DirtCoercion& d);
std::string to_string(const ValueCoercion& v);
std::string to_string(const CompCoercion& c);
std::string to_string(const ValueTerm& v);
std::string to_string(const CompTerm& c);
std::string to_string(const ParamContext& ctx);

// Mathematical rendering with parameters renamed in order of first
// occurrence: type parameters become α, β, γ, ... and dirt parameters δ, δ′, ...
// Pure arrows print as "→", effectful ones as "→^δ" or "→^{{Op}∪δ}".
std::string pretty_type(const ValueType& a);

// True when a and b are equal up to a bijective renaming of parameters.
bool alpha_equivalent(const ValueType& a, const ValueType& b);

}  // namespace coreeff
