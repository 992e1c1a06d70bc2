#include "coreeff/semantics.hpp"

#include <functional>
#include <sstream>

#include "coreeff/error.hpp"
#include "coreeff/print.hpp"
#include "coreeff/subst.hpp"

namespace coreeff {

SemValue SemValue::elem(Name base, int i) {
  SemValue v;
  v.kind = Kind::Elem;
  v.name = std::move(base);
  v.index = i;
  return v;
}

SemValue SemValue::ret(SemValue leaf) {
  SemValue v;
  v.kind = Kind::Return;
  v.kids.push_back(std::move(leaf));
  return v;
}

SemValue SemValue::op(Name op, SemValue arg, std::vector<SemValue> conts) {
  SemValue v;
  v.kind = Kind::Op;
  v.name = std::move(op);
  v.kids.push_back(std::move(arg));
  for (auto& c : conts) v.kids.push_back(std::move(c));
  return v;
}

SemValue SemValue::func(SemFn skel, SemFn eff) {
  SemValue v;
  v.kind = Kind::Func;
  v.skel = std::make_shared<const SemFn>(std::move(skel));
  if (eff) v.eff = std::make_shared<const SemFn>(std::move(eff));
  return v;
}

std::string to_string(const SemValue& v) {
  switch (v.kind) {
    case SemValue::Kind::Star:
      return "*";
    case SemValue::Kind::Elem:
      return v.name + "#" + std::to_string(v.index);
    case SemValue::Kind::Return:
      return "ret(" + to_string(v.kids[0]) + ")";
    case SemValue::Kind::Op: {
      std::string out = v.name + "(" + to_string(v.kids[0]) + ";";
      for (std::size_t i = 1; i < v.kids.size(); ++i) out += " " + to_string(v.kids[i]);
      return out + ")";
    }
    case SemValue::Kind::Func:
      return v.eff ? "<fun/eff>" : "<fun>";
  }
  return "?";
}

namespace {

// Calls fn with every vector c where 0 <= c[i] < sizes[i].
void for_each_choice(const std::vector<std::size_t>& sizes, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> c(sizes.size(), 0);
  for (auto s : sizes)
    if (s == 0) return;
  for (;;) {
    fn(c);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == sizes[i]) c[i++] = 0;
    if (i == c.size()) return;
  }
}

// base^exp, saturating at cap + 1.
std::size_t bounded_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

const SemValue& lookup(const SemEnv& env, const Name& x) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == x) return it->second;
  fail(ErrorCode::UnboundVar, x);
}

SemEnv extend(SemEnv env, const Name& x, SemValue v) {
  env.emplace_back(x, std::move(v));
  return env;
}

std::size_t mix(std::size_t h, std::size_t v) { return h * 1000003u ^ (v + 0x9e3779b9u + (h << 6) + (h >> 2)); }

const SemFn& call_skel(const SemValue& f) {
  if (f.kind != SemValue::Kind::Func || !f.skel) fail(ErrorCode::Internal, "applying a non-function");
  return *f.skel;
}

const SemFn& call_eff(const SemValue& f) {
  if (f.kind != SemValue::Kind::Func || !f.eff) fail(ErrorCode::Internal, "function has no effectful component");
  return *f.eff;
}

}  // namespace

Semantics::Semantics(const Signature& sig, Assignment xi, Budget budget)
    : sig_(sig), xi_(std::move(xi)), budget_(budget) {}

Skeleton Semantics::resolve(const Skeleton& s) const {
  switch (s.kind) {
    case Skeleton::Kind::Param: {
      auto it = xi_.skels.find(s.name);
      if (it == xi_.skels.end()) fail(ErrorCode::UnboundSkeletonParam, s.name);
      return resolve(it->second);
    }
    case Skeleton::Kind::Arrow:
      return Skeleton::arrow(resolve(s.domain()), resolve(s.codomain()));
    default:
      return s;
  }
}

Skeleton Semantics::skeleton_of(const ValueType& a) const {
  switch (a.kind) {
    case ValueType::Kind::Param: {
      auto it = xi_.types.find(a.name);
      if (it == xi_.types.end()) fail(ErrorCode::UnboundTypeParam, a.name);
      return resolve(it->second.skeleton);
    }
    case ValueType::Kind::Unit:
      return Skeleton::unit();
    case ValueType::Kind::Base:
      return Skeleton::base(a.name);
    case ValueType::Kind::Arrow:
      return Skeleton::arrow(skeleton_of(a.argument()), skeleton_of(a.result().value));
  }
  fail(ErrorCode::Internal, "value type kind");
}

OpSet Semantics::interp_dirt(const Dirt& d) const {
  OpSet out = d.ops;
  if (d.tail) {
    auto it = xi_.dirts.find(*d.tail);
    if (it == xi_.dirts.end()) fail(ErrorCode::UnboundDirtParam, *d.tail);
    out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

SemValue Semantics::inject(const SemValue& x) {
  switch (x.kind) {
    case SemValue::Kind::Func: {
      SemValue out = x;
      out.eff.reset();
      return out;
    }
    case SemValue::Kind::Return:
      return SemValue::ret(inject(x.kids[0]));
    case SemValue::Kind::Op: {
      std::vector<SemValue> conts;
      for (std::size_t i = 1; i < x.kids.size(); ++i) conts.push_back(inject(x.kids[i]));
      return SemValue::op(x.name, inject(x.kids[0]), std::move(conts));
    }
    default:
      return x;
  }
}

SemValue Semantics::bind(const SemValue& t, const SemFn& f) const {
  if (t.kind == SemValue::Kind::Return) return f(t.kids[0]);
  if (t.kind != SemValue::Kind::Op) fail(ErrorCode::Internal, "bind on a non-tree");
  std::vector<SemValue> conts;
  for (std::size_t i = 1; i < t.kids.size(); ++i) conts.push_back(bind(t.kids[i], f));
  return SemValue::op(t.name, t.kids[0], std::move(conts));
}

// ---------------------------------------------------------------- exact carriers

std::vector<SemValue> Semantics::enumerate_trees(const std::vector<SemValue>& leaves, const OpSet& ops) const {
  if (!ops.empty()) fail(ErrorCode::DomainTooLarge, "free monad over a non-empty signature is infinite");
  std::vector<SemValue> out;
  for (const auto& l : leaves) out.push_back(SemValue::ret(l));
  return out;
}

std::vector<SemValue> Semantics::interp_skeleton(const Skeleton& raw) const {
  const Skeleton s = resolve(raw);
  switch (s.kind) {
    case Skeleton::Kind::Unit:
      return {SemValue::star()};
    case Skeleton::Kind::Base: {
      std::vector<SemValue> out;
      for (int i = 0; i < sig_.base_size(s.name); ++i) out.push_back(SemValue::elem(s.name, i));
      return out;
    }
    case Skeleton::Kind::Arrow: {
      const auto dom = interp_skeleton(s.domain());
      const auto cod = enumerate_trees(interp_skeleton(s.codomain()), sig_.all_ops());
      const std::size_t count = bounded_pow(cod.size(), dom.size(), budget_.max_carrier);
      if (count > budget_.max_carrier)
        fail(ErrorCode::DomainTooLarge, "carrier of " + to_string(s) + " exceeds " + std::to_string(budget_.max_carrier));
      std::vector<SemValue> out;
      const Skeleton d = s.domain(), c = s.codomain();
      for_each_choice(std::vector<std::size_t>(dom.size(), cod.size()), [&](const std::vector<std::size_t>& ch) {
        out.push_back(SemValue::func([this, dom, cod, ch, d](const SemValue& x) {
          for (std::size_t i = 0; i < dom.size(); ++i)
            if (equal_skel(d, dom[i], x)) return cod[ch[i]];
          fail(ErrorCode::Internal, "argument outside the enumerated domain");
        }));
      });
      (void)c;
      return out;
    }
    case Skeleton::Kind::Param:
      break;
  }
  fail(ErrorCode::Internal, "unresolved skeleton");
}

Interp Semantics::interp_vtype(const ValueType& a) const {
  Interp out;
  out.inject = [](const SemValue& x) { return inject(x); };
  switch (a.kind) {
    case ValueType::Kind::Param: {
      auto it = xi_.types.find(a.name);
      if (it == xi_.types.end()) fail(ErrorCode::UnboundTypeParam, a.name);
      out.carrier = it->second.elems;
      return out;
    }
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      out.carrier = interp_skeleton(skeleton_of(a));
      return out;
    case ValueType::Kind::Arrow:
      break;
  }
  const ValueType& arg = a.argument();
  const CompType& res = a.result();
  const auto dom = interp_vtype(arg).carrier;
  const auto cod = interp_ctype(res).carrier;
  const Skeleton sarg = skeleton_of(arg), sres = skeleton_of(res.value);
  const auto skel_dom = interp_skeleton(sarg);
  const auto skel_cod = enumerate_trees(interp_skeleton(sres), sig_.all_ops());

  // image[i] is the effectful preimage of skel_dom[i], if any.
  std::vector<std::optional<std::size_t>> image(skel_dom.size());
  std::size_t free_points = 0;
  for (std::size_t i = 0; i < skel_dom.size(); ++i) {
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (equal_skel(sarg, skel_dom[i], inject(dom[j]))) image[i] = j;
    if (!image[i]) ++free_points;
  }
  const std::size_t count = bounded_pow(cod.size(), dom.size(), budget_.max_carrier);
  const std::size_t rest = bounded_pow(skel_cod.size(), free_points, budget_.max_carrier);
  if (count > budget_.max_carrier || rest > budget_.max_carrier || count * rest > budget_.max_carrier)
    fail(ErrorCode::DomainTooLarge, "carrier of " + to_string(a) + " exceeds " + std::to_string(budget_.max_carrier));

  std::vector<std::size_t> sizes(dom.size(), cod.size());
  sizes.insert(sizes.end(), free_points, skel_cod.size());
  for_each_choice(sizes, [&](const std::vector<std::size_t>& ch) {
    std::vector<SemValue> skel_table(skel_dom.size());
    std::size_t k = dom.size();
    for (std::size_t i = 0; i < skel_dom.size(); ++i)
      skel_table[i] = image[i] ? inject(cod[ch[*image[i]]]) : skel_cod[ch[k++]];
    std::vector<SemValue> eff_table(dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) eff_table[j] = cod[ch[j]];
    auto skel = [this, skel_dom, skel_table, sarg](const SemValue& x) {
      for (std::size_t i = 0; i < skel_dom.size(); ++i)
        if (equal_skel(sarg, skel_dom[i], x)) return skel_table[i];
      fail(ErrorCode::Internal, "argument outside the enumerated domain");
    };
    auto eff = [this, dom, eff_table, arg](const SemValue& x) {
      for (std::size_t j = 0; j < dom.size(); ++j)
        if (equal_vtype(arg, dom[j], x)) return eff_table[j];
      fail(ErrorCode::Internal, "argument outside the enumerated domain");
    };
    out.carrier.push_back(SemValue::func(skel, eff));
  });
  return out;
}

Interp Semantics::interp_ctype(const CompType& c) const {
  Interp out;
  out.inject = [](const SemValue& x) { return inject(x); };
  out.carrier = enumerate_trees(interp_vtype(c.value).carrier, interp_dirt(c.dirt));
  return out;
}

const std::vector<SemValue>& Semantics::ground(const ValueType& b) const {
  const std::string key = "G:" + to_string(b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto carrier = interp_vtype(b).carrier;
  return cache_[key] = std::move(carrier);
}

// ---------------------------------------------------------------- coercions

SemValue Semantics::coerce(const ValueCoercion& g, const SemValue& x) const {
  using K = ValueCoercion::Kind;
  switch (g.kind) {
    case K::Param:  // inclusion between the assigned carriers
    case K::ReflParam:
    case K::ReflUnit:
    case K::ReflBase:
      return x;
    case K::Compose:
      return coerce(*g.first, coerce(*g.second, x));
    case K::Arrow: {
      if (x.kind != SemValue::Kind::Func || !x.eff) fail(ErrorCode::Internal, "arrow coercion on a non-function");
      auto eff = x.eff;
      ValueCoercion arg = *g.first;
      CompCoercion res = *g.res;
      SemValue out = x;
      out.eff = std::make_shared<const SemFn>(
          [this, eff, arg, res](const SemValue& a) { return coerce(res, (*eff)(coerce(arg, a))); });
      return out;
    }
  }
  fail(ErrorCode::Internal, "value coercion kind");
}

SemValue Semantics::coerce(const CompCoercion& g, const SemValue& t) const {
  // Dirt coercions are op-set inclusions and leave trees unchanged.
  return bind(t, [this, &g](const SemValue& v) { return SemValue::ret(coerce(g.value, v)); });
}

// ---------------------------------------------------------------- evaluation

SemValue Semantics::eval_skeletal(const SemEnv& env, const ValueTerm& v) const {
  switch (v.kind) {
    case ValueTerm::Kind::Var:
      return lookup(env, v.var);
    case ValueTerm::Kind::Unit:
      return SemValue::star();
    case ValueTerm::Kind::Lambda: {
      Name x = v.var;
      CompTerm body = *v.body;
      return SemValue::func([this, env, x, body](const SemValue& a) { return eval_skeletal(extend(env, x, a), body); });
    }
    case ValueTerm::Kind::Cast:
      return eval_skeletal(env, *v.inner);
  }
  fail(ErrorCode::Internal, "value term kind");
}

SemValue Semantics::eval_skeletal(const SemEnv& env, const CompTerm& c) const {
  switch (c.kind) {
    case CompTerm::Kind::Return:
      return SemValue::ret(eval_skeletal(env, *c.v1));
    case CompTerm::Kind::OpCall: {
      std::vector<SemValue> conts;
      for (const auto& b : ground(sig_.op(c.name).result))
        conts.push_back(eval_skeletal(extend(env, c.bindvar, b), *c.c1));
      return SemValue::op(c.name, eval_skeletal(env, *c.v1), std::move(conts));
    }
    case CompTerm::Kind::Do: {
      const CompTerm& rest = *c.c2;
      const Name& x = c.name;
      return bind(eval_skeletal(env, *c.c1), [&](const SemValue& a) { return eval_skeletal(extend(env, x, a), rest); });
    }
    case CompTerm::Kind::App:
      return call_skel(eval_skeletal(env, *c.v1))(eval_skeletal(env, *c.v2));
    case CompTerm::Kind::LetVal:
      return eval_skeletal(extend(env, c.name, eval_skeletal(env, *c.v1)), *c.c1);
    case CompTerm::Kind::Cast:
      return eval_skeletal(env, *c.c1);
  }
  fail(ErrorCode::Internal, "computation term kind");
}

SemValue Semantics::eval_effectful(const SemEnv& env, const ValueTerm& v) const {
  switch (v.kind) {
    case ValueTerm::Kind::Var:
      return lookup(env, v.var);
    case ValueTerm::Kind::Unit:
      return SemValue::star();
    case ValueTerm::Kind::Lambda: {
      Name x = v.var;
      CompTerm body = *v.body;
      SemEnv skel_env;
      for (const auto& [n, val] : env) skel_env.emplace_back(n, inject(val));
      return SemValue::func(
          [this, skel_env, x, body](const SemValue& a) { return eval_skeletal(extend(skel_env, x, a), body); },
          [this, env, x, body](const SemValue& a) { return eval_effectful(extend(env, x, a), body); });
    }
    case ValueTerm::Kind::Cast:
      return coerce(*v.coercion, eval_effectful(env, *v.inner));
  }
  fail(ErrorCode::Internal, "value term kind");
}

SemValue Semantics::eval_effectful(const SemEnv& env, const CompTerm& c) const {
  switch (c.kind) {
    case CompTerm::Kind::Return:
      return SemValue::ret(eval_effectful(env, *c.v1));
    case CompTerm::Kind::OpCall: {
      std::vector<SemValue> conts;
      for (const auto& b : ground(sig_.op(c.name).result))
        conts.push_back(eval_effectful(extend(env, c.bindvar, b), *c.c1));
      return SemValue::op(c.name, eval_effectful(env, *c.v1), std::move(conts));
    }
    case CompTerm::Kind::Do: {
      const CompTerm& rest = *c.c2;
      const Name& x = c.name;
      return bind(eval_effectful(env, *c.c1),
                  [&](const SemValue& a) { return eval_effectful(extend(env, x, a), rest); });
    }
    case CompTerm::Kind::App:
      return call_eff(eval_effectful(env, *c.v1))(eval_effectful(env, *c.v2));
    case CompTerm::Kind::LetVal:
      return eval_effectful(extend(env, c.name, eval_effectful(env, *c.v1)), *c.c1);
    case CompTerm::Kind::Cast:
      return coerce(*c.coercion, eval_effectful(env, *c.c1));
  }
  fail(ErrorCode::Internal, "computation term kind");
}

// ---------------------------------------------------------------- probes, hashing, equality

const std::vector<SemValue>& Semantics::probes_skel(const Skeleton& raw) const {
  const Skeleton s = resolve(raw);
  const std::string key = "S:" + to_string(s);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::vector<SemValue> out;
  if (s.kind != Skeleton::Kind::Arrow) {
    out = interp_skeleton(s);
  } else {
    bool exact = false;
    if (sig_.all_ops().empty()) {
      try {
        auto all = interp_skeleton(s);
        if (all.size() <= 32) {
          out = std::move(all);
          exact = true;
        }
      } catch (const Error&) {
      }
    }
    if (!exact) {
      const auto& trees = probes_skel_tree(s.codomain());
      const Skeleton d = s.domain();
      for (int k = 0; k < budget_.probes; ++k) {
        const std::size_t n = trees.size();
        auto trees_copy = trees;
        out.push_back(SemValue::func([this, d, trees_copy, k, n](const SemValue& x) {
          return trees_copy[(hash_skel(d, x) * (2 * k + 1) + k) % n];
        }));
      }
    }
  }
  return cache_[key] = std::move(out);
}

const std::vector<SemValue>& Semantics::probes_skel_tree(const Skeleton& s) const {
  const std::string key = "T:" + to_string(resolve(s));
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto leaves = probes_skel(s);
  std::vector<SemValue> out;
  for (std::size_t i = 0; i < leaves.size() && static_cast<int>(i) < budget_.probes; ++i)
    out.push_back(SemValue::ret(leaves[i]));
  std::size_t shift = 0;
  for (const auto& [op, os] : sig_.ops()) {
    const auto& args = probes_skel(skeleton_of(os.param));
    const auto& results = ground(os.result);
    std::vector<SemValue> conts;
    for (std::size_t i = 0; i < results.size(); ++i) conts.push_back(SemValue::ret(leaves[(i + shift) % leaves.size()]));
    out.push_back(SemValue::op(op, args[shift % args.size()], std::move(conts)));
    ++shift;
  }
  return cache_[key] = std::move(out);
}

const std::vector<SemValue>& Semantics::probes_vtype(const ValueType& a) const {
  const std::string key = "V:" + to_string(a);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::vector<SemValue> out;
  if (a.kind != ValueType::Kind::Arrow) {
    out = interp_vtype(a).carrier;
  } else {
    bool exact = false;
    try {
      auto all = interp_vtype(a);
      if (all.carrier.size() <= 32) {
        out = std::move(all.carrier);
        exact = true;
      }
    } catch (const Error&) {
    }
    if (!exact) {
      const auto trees = probes_ctype(a.result());
      const Skeleton d = skeleton_of(a.argument());
      const std::size_t n = trees.size();
      for (int k = 0; k < budget_.probes; ++k) {
        auto g = [this, d, trees, k, n](const SemValue& s) { return trees[(hash_skel(d, s) * (2 * k + 1) + k) % n]; };
        out.push_back(SemValue::func([g](const SemValue& s) { return inject(g(s)); },
                                     [g](const SemValue& x) { return g(inject(x)); }));
      }
    }
  }
  return cache_[key] = std::move(out);
}

const std::vector<SemValue>& Semantics::probes_ctype(const CompType& c) const {
  const std::string key = "C:" + to_string(c);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto leaves = probes_vtype(c.value);
  if (leaves.empty()) fail(ErrorCode::DomainTooLarge, "empty carrier for " + to_string(c.value));
  std::vector<SemValue> out;
  for (std::size_t i = 0; i < leaves.size() && static_cast<int>(i) < budget_.probes; ++i)
    out.push_back(SemValue::ret(leaves[i]));
  std::size_t shift = 0;
  for (const auto& op : interp_dirt(c.dirt)) {
    const auto& os = sig_.op(op);
    const auto& args = probes_vtype(os.param);
    const auto& results = ground(os.result);
    std::vector<SemValue> conts;
    for (std::size_t i = 0; i < results.size(); ++i) conts.push_back(SemValue::ret(leaves[(i + shift) % leaves.size()]));
    out.push_back(SemValue::op(op, args[shift % args.size()], std::move(conts)));
    ++shift;
  }
  return cache_[key] = std::move(out);
}

std::size_t Semantics::hash_skel(const Skeleton& raw, const SemValue& x) const {
  const Skeleton s = resolve(raw);
  switch (s.kind) {
    case Skeleton::Kind::Unit:
      return 1;
    case Skeleton::Kind::Base:
      return static_cast<std::size_t>(x.index) + 2;
    case Skeleton::Kind::Arrow: {
      std::size_t h = 17;
      for (const auto& p : probes_skel(s.domain())) h = mix(h, hash_tree(s.codomain(), call_skel(x)(p)));
      return h;
    }
    case Skeleton::Kind::Param:
      break;
  }
  fail(ErrorCode::Internal, "unresolved skeleton");
}

std::size_t Semantics::hash_tree(const Skeleton& s, const SemValue& t) const {
  if (t.kind == SemValue::Kind::Return) return mix(3, hash_skel(s, t.kids[0]));
  std::size_t h = mix(5, std::hash<std::string>{}(t.name));
  h = mix(h, hash_skel(skeleton_of(sig_.op(t.name).param), t.kids[0]));
  for (std::size_t i = 1; i < t.kids.size(); ++i) h = mix(h, hash_tree(s, t.kids[i]));
  return h;
}

bool Semantics::equal_skel(const Skeleton& raw, const SemValue& x, const SemValue& y) const {
  const Skeleton s = resolve(raw);
  switch (s.kind) {
    case Skeleton::Kind::Unit:
      return x.kind == SemValue::Kind::Star && y.kind == SemValue::Kind::Star;
    case Skeleton::Kind::Base:
      return x.kind == SemValue::Kind::Elem && y.kind == SemValue::Kind::Elem && x.index == y.index;
    case Skeleton::Kind::Arrow:
      for (const auto& p : probes_skel(s.domain()))
        if (!equal_skel_tree(s.codomain(), call_skel(x)(p), call_skel(y)(p))) return false;
      return true;
    case Skeleton::Kind::Param:
      break;
  }
  fail(ErrorCode::Internal, "unresolved skeleton");
}

bool Semantics::equal_skel_tree(const Skeleton& s, const SemValue& x, const SemValue& y) const {
  if (x.kind != y.kind) return false;
  if (x.kind == SemValue::Kind::Return) return equal_skel(s, x.kids[0], y.kids[0]);
  if (x.kind != SemValue::Kind::Op) fail(ErrorCode::Internal, "comparing non-trees");
  if (x.name != y.name || x.kids.size() != y.kids.size()) return false;
  if (!equal_skel(skeleton_of(sig_.op(x.name).param), x.kids[0], y.kids[0])) return false;
  for (std::size_t i = 1; i < x.kids.size(); ++i)
    if (!equal_skel_tree(s, x.kids[i], y.kids[i])) return false;
  return true;
}

bool Semantics::equal_vtype(const ValueType& a, const SemValue& x, const SemValue& y) const {
  if (a.kind != ValueType::Kind::Arrow) return equal_skel(skeleton_of(a), x, y);
  for (const auto& p : probes_vtype(a.argument()))
    if (!equal_ctype(a.result(), call_eff(x)(p), call_eff(y)(p))) return false;
  return equal_skel(skeleton_of(a), x, y);
}

bool Semantics::equal_ctype(const CompType& c, const SemValue& x, const SemValue& y) const {
  if (x.kind != y.kind) return false;
  if (x.kind == SemValue::Kind::Return) return equal_vtype(c.value, x.kids[0], y.kids[0]);
  if (x.kind != SemValue::Kind::Op) fail(ErrorCode::Internal, "comparing non-trees");
  if (x.name != y.name || x.kids.size() != y.kids.size()) return false;
  if (!equal_vtype(sig_.op(x.name).param, x.kids[0], y.kids[0])) return false;
  for (std::size_t i = 1; i < x.kids.size(); ++i)
    if (!equal_ctype(c, x.kids[i], y.kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------- checks

std::vector<SemEnv> sample_envs(const Semantics& sem, const TypingContext& gamma) {
  std::vector<const std::vector<SemValue>*> pools;
  std::size_t total = 1;
  for (const auto& b : gamma.bindings) {
    pools.push_back(&sem.probes_vtype(b.type));
    total = pools.back()->empty() ? 0 : std::min<std::size_t>(total * pools.back()->size(), 1u << 20);
  }
  std::vector<SemEnv> out;
  const std::size_t n = std::min(total, sem.budget().max_envs);
  for (std::size_t i = 0; i < n; ++i) {
    SemEnv env;
    std::size_t rest = i;
    for (std::size_t k = 0; k < pools.size(); ++k) {
      const auto& pool = *pools[k];
      const std::size_t pick = total <= sem.budget().max_envs ? rest % pool.size() : (i * (2 * k + 3) + k) % pool.size();
      rest /= pool.size();
      env.emplace_back(gamma.bindings[k].var, pool[pick]);
    }
    out.push_back(std::move(env));
  }
  return out;
}

namespace {

std::string describe_env(const SemEnv& env) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < env.size(); ++i) os << (i ? ", " : "") << env[i].first << "=" << to_string(env[i].second);
  os << "}";
  return os.str();
}

SemEnv inject_env(const SemEnv& env) {
  SemEnv out;
  for (const auto& [n, v] : env) out.emplace_back(n, Semantics::inject(v));
  return out;
}

}  // namespace

void check_square(const Semantics& sem, const TypingContext& gamma, const Term& term, const AnyType& type) {
  for (const auto& env : sample_envs(sem, gamma)) {
    const SemEnv skel_env = inject_env(env);
    bool ok;
    if (const auto* v = std::get_if<ValueTerm>(&term)) {
      const auto& a = std::get<ValueType>(type);
      ok = sem.equal_skel(sem.skeleton_of(a), Semantics::inject(sem.eval_effectful(env, *v)), sem.eval_skeletal(skel_env, *v));
    } else {
      const auto& c = std::get<CompTerm>(term);
      const auto& ct = std::get<CompType>(type);
      ok = sem.equal_skel_tree(sem.skeleton_of(ct.value), Semantics::inject(sem.eval_effectful(env, c)),
                               sem.eval_skeletal(skel_env, c));
    }
    if (!ok) fail(ErrorCode::CounterexampleFound, "commuting square fails at " + describe_env(env));
  }
}

void check_preservation(const Semantics& sem, const Substitution& s1, const Substitution& s2,
                        const CoercionFamily& y, const FreeParamSet& f, const TypingContext& gamma,
                        const Term& term, const AnyType& type) {
  FreeParamSet need = std::holds_alternative<ValueType>(type) ? free_params(std::get<ValueType>(type))
                                                               : free_params(std::get<CompType>(type));
  need.unite(free_params(gamma).swapped());
  for (const auto& p : need.all())
    if (!f.is_pos(p) && !f.is_neg(p)) fail(ErrorCode::InvalidArgument, "polarity set misses " + p.name);

  const TypingContext g1 = apply(s1, gamma);
  std::vector<ValueCoercion> env_coercions;
  for (const auto& b : gamma.bindings) env_coercions.push_back(extend_family(y, b.type));

  for (const auto& env : sample_envs(sem, g1)) {
    SemEnv env2;
    for (std::size_t i = 0; i < env.size(); ++i) env2.emplace_back(env[i].first, sem.coerce(env_coercions[i], env[i].second));
    bool ok;
    if (const auto* v = std::get_if<ValueTerm>(&term)) {
      const auto& a = std::get<ValueType>(type);
      const SemValue lhs = sem.eval_effectful(env, apply(s1, *v));
      const SemValue rhs = sem.coerce(extend_family(y, a), sem.eval_effectful(env2, apply(s2, *v)));
      ok = sem.equal_vtype(apply(s1, a), lhs, rhs);
    } else {
      const auto& c = std::get<CompTerm>(term);
      const auto& ct = std::get<CompType>(type);
      const SemValue lhs = sem.eval_effectful(env, apply(s1, c));
      const SemValue rhs = sem.coerce(extend_family(y, ct), sem.eval_effectful(env2, apply(s2, c)));
      ok = sem.equal_ctype(apply(s1, ct), lhs, rhs);
    }
    if (!ok) fail(ErrorCode::CounterexampleFound, "preservation fails at " + describe_env(env));
  }
}

}  // namespace coreeff
