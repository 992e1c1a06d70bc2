// Helpers shared by the unit tests and the acceptance runner.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "coreeff/app.hpp"
#include "coreeff/check.hpp"
#include "coreeff/corpus.hpp"
#include "coreeff/phases.hpp"
#include "coreeff/polarity.hpp"
#include "coreeff/subst.hpp"
#include "coreeff/syntax.hpp"

namespace testsupport {

using namespace coreeff;

inline ValueType P(const Name& a) { return ValueType::param(a); }
inline ValueType U() { return ValueType::unit(); }
inline ValueType B(const Name& b = "bool") { return ValueType::base(b); }
inline Dirt D(const Name& d) { return Dirt::param(d); }
inline Dirt DO(OpSet ops, const Name& d) { return Dirt::open(std::move(ops), d); }
inline Dirt DC(OpSet ops = {}) { return Dirt::closed(std::move(ops)); }
inline CompType C(ValueType a, Dirt d = {}) { return CompType{std::move(a), std::move(d)}; }

// One corpus item built from its parts, e.g.
//   item("(op Get (unit) (base bool))", "(skel s) (typaram a (param s))")
CorpusItem item(const std::string& signature, const std::string& context, const std::string& rest = "");
ParamContext context_of(const std::string& context, const std::string& signature = "");
// Signature with ops Get, Put : unit -> bool.
Signature small_signature();

std::string read_file(const std::string& path);

// "item config dn de tn te" lines, the format of tests/golden/*_metrics.txt.
std::vector<std::string> metrics_lines(const MetricsReport& r);
// Same lines read back from a golden file, comments dropped.
std::vector<std::string> golden_lines(const std::string& path);

// ---- random generation

struct ContextShape {
  int max_skels = 2, max_dirts = 4, max_types = 6, max_tycos = 7, max_dcos = 6;
};

// Canonical: type params over skeleton params, edges between params, dirt
// edges from a bare parameter. Includes loops and parallel edges.
ParamContext random_canonical_context(const Signature& sig, std::mt19937_64& rng, const ContextShape& shape = {});
FreeParamSet random_polarity(const ParamContext& ctx, std::mt19937_64& rng);

// Well-formed and satisfiable but generally not canonical: structured
// skeletons, coercions between arrow types, operations on the left of dirt
// coercions.
ParamContext random_context(const Signature& sig, std::mt19937_64& rng);

// A valid substitution out of ctx built directly: some skeleton, dirt and
// type parameters are replaced by random structures over the survivors and
// fresh parameters. `out` receives the target context.
Substitution random_substitution(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                 ParamContext& out, int salt);

// Random judgments of ctx.
Skeleton random_skeleton(const ParamContext& ctx, std::mt19937_64& rng, int depth = 2);
Dirt random_dirt(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng);
ValueType random_type(const Signature& sig, const ParamContext& ctx, const Skeleton& skel, std::mt19937_64& rng,
                      int depth = 2);
ValueCoercion random_value_coercion(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                    int depth = 2);
DirtCoercion random_dirt_coercion(const Signature& sig, const ParamContext& ctx, std::mt19937_64& rng,
                                  int depth = 2);

// A typing context with one variable per type parameter and one boolean.
TypingContext variables_for(const ParamContext& ctx);

// Random well-typed terms under gamma, generated together with their type.
std::pair<ValueTerm, ValueType> random_value_term(const Signature& sig, const ParamContext& ctx,
                                                  const TypingContext& gamma, std::mt19937_64& rng, int depth = 3);
std::pair<CompTerm, CompType> random_comp_term(const Signature& sig, const ParamContext& ctx,
                                               const TypingContext& gamma, std::mt19937_64& rng, int depth = 3);

}  // namespace testsupport
