#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "coreeff/polarity.hpp"
#include "coreeff/syntax.hpp"

namespace coreeff {

struct SemValue;
using SemFn = std::function<SemValue(const SemValue&)>;

// Elements of the skeletal and effectful carriers. Trees are either a
// returned leaf or an operation node holding its argument followed by one
// continuation tree per element of the operation's result type.
struct SemValue {
  enum class Kind { Star, Elem, Return, Op, Func };
  Kind kind = Kind::Star;
  Name name;  // base name (Elem) or operation (Op)
  int index = 0;
  std::vector<SemValue> kids;
  // Functions keep the skeletal map; effectful functions also keep the
  // effectful one, so injecting is dropping `eff`.
  std::shared_ptr<const SemFn> skel, eff;

  static SemValue star() { return {}; }
  static SemValue elem(Name base, int i);
  static SemValue ret(SemValue v);
  static SemValue op(Name op, SemValue arg, std::vector<SemValue> conts);
  static SemValue func(SemFn skel, SemFn eff = nullptr);
};

std::string to_string(const SemValue& v);

struct TypeParamSet {
  Skeleton skeleton;            // closed
  std::vector<SemValue> elems;  // subset of the skeletal carrier; inject is inclusion
};

// Interpretation of parameters. Coercion parameters are interpreted as the
// inclusions their endpoints induce, so they need no entry.
struct Assignment {
  std::map<Name, Skeleton> skels;
  std::map<Name, OpSet> dirts;
  std::map<Name, TypeParamSet> types;
};

struct Budget {
  std::size_t max_carrier = 4096;  // exact enumeration cap
  int probes = 5;                  // sampled elements per function carrier
  std::size_t max_envs = 24;       // environments tried per check
};

struct Interp {
  std::vector<SemValue> carrier;
  SemFn inject;
};

using Term = std::variant<ValueTerm, CompTerm>;
using AnyType = std::variant<ValueType, CompType>;
using SemEnv = std::vector<std::pair<Name, SemValue>>;

class Semantics {
 public:
  Semantics(const Signature& sig, Assignment xi = {}, Budget budget = {});
  Semantics(const Semantics&) = delete;
  Semantics& operator=(const Semantics&) = delete;

  // Exact carriers; DomainTooLarge when infinite or over budget.
  std::vector<SemValue> interp_skeleton(const Skeleton& s) const;
  OpSet interp_dirt(const Dirt& d) const;
  Interp interp_vtype(const ValueType& a) const;
  Interp interp_ctype(const CompType& c) const;

  SemValue coerce(const ValueCoercion& g, const SemValue& x) const;
  SemValue coerce(const CompCoercion& g, const SemValue& t) const;
  static SemValue inject(const SemValue& x);
  SemValue bind(const SemValue& t, const SemFn& f) const;

  SemValue eval_skeletal(const SemEnv& env, const ValueTerm& v) const;
  SemValue eval_skeletal(const SemEnv& env, const CompTerm& c) const;
  SemValue eval_effectful(const SemEnv& env, const ValueTerm& v) const;
  SemValue eval_effectful(const SemEnv& env, const CompTerm& c) const;

  // Extensional equality; function carriers are compared on probe sets
  // (exact when the domain is small and finite).
  bool equal_skel(const Skeleton& s, const SemValue& x, const SemValue& y) const;
  bool equal_skel_tree(const Skeleton& s, const SemValue& x, const SemValue& y) const;
  bool equal_vtype(const ValueType& a, const SemValue& x, const SemValue& y) const;
  bool equal_ctype(const CompType& c, const SemValue& x, const SemValue& y) const;

  const std::vector<SemValue>& probes_skel(const Skeleton& s) const;
  const std::vector<SemValue>& probes_vtype(const ValueType& a) const;
  const std::vector<SemValue>& probes_ctype(const CompType& c) const;

  Skeleton skeleton_of(const ValueType& a) const;
  Skeleton resolve(const Skeleton& s) const;

  const Signature& signature() const { return sig_; }
  const Budget& budget() const { return budget_; }

 private:
  std::size_t hash_skel(const Skeleton& s, const SemValue& x) const;
  std::size_t hash_tree(const Skeleton& s, const SemValue& x) const;
  const std::vector<SemValue>& probes_skel_tree(const Skeleton& s) const;
  const std::vector<SemValue>& ground(const ValueType& b) const;
  std::vector<SemValue> enumerate_trees(const std::vector<SemValue>& leaves, const OpSet& ops) const;

  const Signature& sig_;
  Assignment xi_;
  Budget budget_;
  mutable std::map<std::string, std::vector<SemValue>> cache_;
};

// Environments drawn from the probe sets of the given types.
std::vector<SemEnv> sample_envs(const Semantics& sem, const TypingContext& gamma);

// The commuting square inject . eval_eff = eval_skel . inject, checked at
// every sampled environment. Throws CounterexampleFound.
void check_square(const Semantics& sem, const TypingContext& gamma, const Term& term, const AnyType& type);

// [[s1(t)]] = [[Y(A)]] . [[s2(t)]] . [[Y(Gamma)]] pointwise, for closing s1, s2.
// Throws CounterexampleFound.
void check_preservation(const Semantics& sem, const Substitution& s1, const Substitution& s2,
                        const CoercionFamily& y, const FreeParamSet& f, const TypingContext& gamma,
                        const Term& term, const AnyType& type);

}  // namespace coreeff
