#include <doctest.h>

#include <map>

#include "coreeff/error.hpp"
#include "coreeff/semantics.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

Skeleton SB() { return Skeleton::base("bool"); }

// The value a function table assigns to every element of a finite domain.
std::vector<std::string> table(const SemFn& f, const std::vector<SemValue>& dom) {
  std::vector<std::string> out;
  for (const auto& x : dom) out.push_back(to_string(f(x)));
  return out;
}

}  // namespace

TEST_CASE("ground carriers") {
  const Signature sig;
  const Semantics sem(sig);
  CHECK(sem.interp_skeleton(Skeleton::unit()).size() == 1);
  CHECK(to_string(sem.interp_skeleton(Skeleton::unit())[0]) == "*");
  CHECK(sem.interp_skeleton(SB()).size() == 2);
  CHECK(sem.interp_skeleton(Skeleton::base("int")).size() == 3);

  // Every function bool -> bool exactly once.
  const auto dom = sem.interp_skeleton(SB());
  const auto fns = sem.interp_skeleton(Skeleton::arrow(SB(), SB()));
  REQUIRE(fns.size() == 4);
  std::set<std::vector<std::string>> seen;
  for (const auto& f : fns) seen.insert(table(*f.skel, dom));
  std::set<std::vector<std::string>> expect;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      expect.insert({"ret(bool#" + std::to_string(a) + ")", "ret(bool#" + std::to_string(b) + ")"});
  CHECK(seen == expect);
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = 0; j < fns.size(); ++j)
      CHECK(sem.equal_skel(Skeleton::arrow(SB(), SB()), fns[i], fns[j]) == (i == j));

  CHECK(sem.interp_vtype(arrow(B(), B(), DC())).carrier.size() == 4);
}

TEST_CASE("dirts and parametric carriers") {
  const Signature sig = small_signature();
  Assignment xi;
  xi.dirts["d"] = {"Put"};
  xi.skels["s"] = SB();
  xi.types["a"] = TypeParamSet{SB(), {SemValue::elem("bool", 0)}};
  const Semantics sem(sig, xi);
  CHECK(sem.interp_dirt(DO({"Get"}, "d")) == OpSet{"Get", "Put"});
  CHECK(sem.interp_dirt(DC()) == OpSet{});
  CHECK(sem.interp_vtype(P("a")).carrier.size() == 1);

  // Effectful functions out of a one-point subset of bool, paired with a
  // skeletal function that agrees on the injected point. Over an empty
  // signature the skeletal codomain holds returns only.
  const Signature pure;
  const Semantics ps(pure, xi);
  const ValueType fa = arrow(P("a"), B(), DC());
  const Interp in = ps.interp_vtype(fa);
  const std::size_t dom = 1, cod = 2, skel_dom = 2, skel_cod = 2;
  std::size_t oracle = 1;
  for (std::size_t i = 0; i < dom; ++i) oracle *= cod;
  for (std::size_t i = dom; i < skel_dom; ++i) oracle *= skel_cod;
  CHECK(in.carrier.size() == oracle);
  const SemValue x = SemValue::elem("bool", 0);
  for (const auto& f : in.carrier) {
    REQUIRE(f.eff);
    CHECK(to_string(Semantics::inject((*f.eff)(x))) == to_string((*f.skel)(Semantics::inject(x))));
  }

  // Free monads over a non-empty signature have no exact carrier.
  try {
    sem.interp_ctype(C(B(), DC({"Get"})));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainTooLarge);
  }
}

TEST_CASE("coercions act as identities on reflexive derivations") {
  const Signature sig;
  const Semantics sem(sig);
  const ValueType bb = arrow(B(), B(), DC());
  const ValueCoercion r1 = derived_refl(bb);
  const ValueCoercion r2 = ValueCoercion::arrow(ValueCoercion::refl_base("bool"),
                                                CompCoercion{ValueCoercion::refl_base("bool"), derived_refl(DC())});
  for (const auto& f : sem.interp_vtype(bb).carrier) {
    CHECK(sem.equal_vtype(bb, sem.coerce(r1, f), f));
    CHECK(sem.equal_vtype(bb, sem.coerce(r1, f), sem.coerce(r2, f)));
  }
  for (const auto& b : sem.interp_skeleton(SB()))
    CHECK(to_string(sem.coerce(ValueCoercion::refl_base("bool"), b)) == to_string(b));
}

TEST_CASE("evaluation") {
  const Signature sig = small_signature();
  const Semantics sem(sig);
  const SemEnv env;
  CHECK(to_string(sem.eval_effectful(env, CompTerm::ret(ValueTerm::unit()))) == "ret(*)");

  const CompTerm seq = CompTerm::do_("x", CompTerm::ret(ValueTerm::unit()), CompTerm::ret(ValueTerm::variable("x")));
  CHECK(to_string(sem.eval_effectful(env, seq)) == "ret(*)");
  CHECK(to_string(sem.eval_skeletal(env, seq)) == "ret(*)");

  const CompTerm call = CompTerm::op_call("Get", ValueTerm::unit(), "y", B(), CompTerm::ret(ValueTerm::variable("y")));
  CHECK(to_string(sem.eval_effectful(env, call)) == "Get(*; ret(bool#0) ret(bool#1))");
  CHECK(to_string(sem.eval_skeletal(env, call)) == "Get(*; ret(bool#0) ret(bool#1))");

  const ValueTerm id = ValueTerm::lambda("z", B(), CompTerm::ret(ValueTerm::variable("z")));
  const CompTerm app = CompTerm::app(id, ValueTerm::variable("b"));
  const SemEnv benv{{"b", SemValue::elem("bool", 1)}};
  CHECK(to_string(sem.eval_effectful(benv, app)) == "ret(bool#1)");
}

TEST_CASE("square and preservation on closed terms") {
  const Signature sig;
  const Semantics sem(sig);
  TypingContext gamma;
  gamma.bindings.push_back({"b", B()});
  const ValueTerm id = ValueTerm::lambda("z", B(), CompTerm::ret(ValueTerm::variable("z")));
  const CompTerm app = CompTerm::app(id, ValueTerm::variable("b"));
  const Term t = app;
  const AnyType ty = C(B(), DC());
  CHECK_NOTHROW(check_square(sem, gamma, t, ty));
  CHECK_NOTHROW(check_preservation(sem, Substitution{}, Substitution{}, CoercionFamily{}, FreeParamSet{}, gamma, t, ty));
  CHECK(sample_envs(sem, gamma).size() == 2);
}
