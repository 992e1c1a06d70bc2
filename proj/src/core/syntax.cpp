#include "coreeff/syntax.hpp"

#include "coreeff/error.hpp"

namespace coreeff {

namespace {

template <typename T>
bool deep_eq(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

template <typename T>
std::shared_ptr<const T> share(T v) {
  return std::make_shared<const T>(std::move(v));
}

bool is_ground(const ValueType& t) {
  switch (t.kind) {
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return true;
    default:
      return false;
  }
}

bool is_closed(const ValueType& t) {
  switch (t.kind) {
    case ValueType::Kind::Param:
      return false;
    case ValueType::Kind::Unit:
    case ValueType::Kind::Base:
      return true;
    case ValueType::Kind::Arrow:
      return is_closed(t.argument()) && is_closed(t.result().value) && !t.result().dirt.tail;
  }
  return false;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnboundSkeletonParam: return "UnboundSkeletonParam";
    case ErrorCode::UnboundDirtParam: return "UnboundDirtParam";
    case ErrorCode::UnknownOperation: return "UnknownOperation";
    case ErrorCode::UnknownBase: return "UnknownBase";
    case ErrorCode::UnboundTypeParam: return "UnboundTypeParam";
    case ErrorCode::UnboundCoercionParam: return "UnboundCoercionParam";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::SkeletonMismatch: return "SkeletonMismatch";
    case ErrorCode::IllFormedContext: return "IllFormedContext";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::UnboundVar: return "UnboundVar";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::OpNotInDirt: return "OpNotInDirt";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::WrongSkeleton: return "WrongSkeleton";
    case ErrorCode::WrongEndpoints: return "WrongEndpoints";
    case ErrorCode::UnmappedParam: return "UnmappedParam";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::MissingFamilyEntry: return "MissingFamilyEntry";
    case ErrorCode::WrongDirection: return "WrongDirection";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::CounterexampleFound: return "CounterexampleFound";
    case ErrorCode::InvalidInstantiation: return "InvalidInstantiation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::JudgmentError: return "JudgmentError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Skeleton Skeleton::param(Name n) {
  Skeleton s;
  s.kind = Kind::Param;
  s.name = std::move(n);
  return s;
}
Skeleton Skeleton::unit() { return Skeleton{}; }
Skeleton Skeleton::base(Name n) {
  Skeleton s;
  s.kind = Kind::Base;
  s.name = std::move(n);
  return s;
}
Skeleton Skeleton::arrow(Skeleton d, Skeleton c) {
  Skeleton s;
  s.kind = Kind::Arrow;
  s.dom = share(std::move(d));
  s.cod = share(std::move(c));
  return s;
}

bool operator==(const Skeleton& a, const Skeleton& b) {
  return a.kind == b.kind && a.name == b.name && deep_eq(a.dom, b.dom) && deep_eq(a.cod, b.cod);
}

ValueType ValueType::param(Name n) {
  ValueType t;
  t.kind = Kind::Param;
  t.name = std::move(n);
  return t;
}
ValueType ValueType::unit() { return ValueType{}; }
ValueType ValueType::base(Name n) {
  ValueType t;
  t.kind = Kind::Base;
  t.name = std::move(n);
  return t;
}
ValueType ValueType::arrow(ValueType a, CompType c) {
  ValueType t;
  t.kind = Kind::Arrow;
  t.arg = share(std::move(a));
  t.res = share(std::move(c));
  return t;
}

ValueType arrow(ValueType a, ValueType b, Dirt d) {
  return ValueType::arrow(std::move(a), CompType{std::move(b), std::move(d)});
}

bool operator==(const ValueType& a, const ValueType& b) {
  return a.kind == b.kind && a.name == b.name && deep_eq(a.arg, b.arg) && deep_eq(a.res, b.res);
}
bool operator==(const CompType& a, const CompType& b) {
  return a.value == b.value && a.dirt == b.dirt;
}

DirtCoercion DirtCoercion::param(Name n) {
  DirtCoercion d;
  d.kind = Kind::Param;
  d.name = std::move(n);
  return d;
}
DirtCoercion DirtCoercion::compose(DirtCoercion outer, DirtCoercion inner) {
  DirtCoercion d;
  d.kind = Kind::Compose;
  d.first = share(std::move(outer));
  d.second = share(std::move(inner));
  return d;
}
DirtCoercion DirtCoercion::refl_param(Name dp) {
  DirtCoercion d;
  d.kind = Kind::ReflParam;
  d.name = std::move(dp);
  return d;
}
DirtCoercion DirtCoercion::refl_empty() { return DirtCoercion{}; }
DirtCoercion DirtCoercion::empty_under(Name dp) {
  DirtCoercion d;
  d.kind = Kind::EmptyUnder;
  d.name = std::move(dp);
  return d;
}
DirtCoercion DirtCoercion::union_both(Name op, DirtCoercion inner) {
  DirtCoercion d;
  d.kind = Kind::UnionBoth;
  d.name = std::move(op);
  d.first = share(std::move(inner));
  return d;
}
DirtCoercion DirtCoercion::union_right(Name op, DirtCoercion inner) {
  DirtCoercion d;
  d.kind = Kind::UnionRight;
  d.name = std::move(op);
  d.first = share(std::move(inner));
  return d;
}

bool operator==(const DirtCoercion& a, const DirtCoercion& b) {
  return a.kind == b.kind && a.name == b.name && deep_eq(a.first, b.first) &&
         deep_eq(a.second, b.second);
}

DirtCoercion union_both(const OpSet& ops, DirtCoercion d) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) d = DirtCoercion::union_both(*it, std::move(d));
  return d;
}

DirtCoercion union_right(const OpSet& ops, DirtCoercion d) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) d = DirtCoercion::union_right(*it, std::move(d));
  return d;
}

ValueCoercion ValueCoercion::param(Name n) {
  ValueCoercion v;
  v.kind = Kind::Param;
  v.name = std::move(n);
  return v;
}
ValueCoercion ValueCoercion::compose(ValueCoercion outer, ValueCoercion inner) {
  ValueCoercion v;
  v.kind = Kind::Compose;
  v.first = share(std::move(outer));
  v.second = share(std::move(inner));
  return v;
}
ValueCoercion ValueCoercion::refl_param(Name a) {
  ValueCoercion v;
  v.kind = Kind::ReflParam;
  v.name = std::move(a);
  return v;
}
ValueCoercion ValueCoercion::refl_unit() { return ValueCoercion{}; }
ValueCoercion ValueCoercion::refl_base(Name b) {
  ValueCoercion v;
  v.kind = Kind::ReflBase;
  v.name = std::move(b);
  return v;
}
ValueCoercion ValueCoercion::arrow(ValueCoercion arg, CompCoercion res) {
  ValueCoercion v;
  v.kind = Kind::Arrow;
  v.first = share(std::move(arg));
  v.res = share(std::move(res));
  return v;
}

bool operator==(const ValueCoercion& a, const ValueCoercion& b) {
  return a.kind == b.kind && a.name == b.name && deep_eq(a.first, b.first) &&
         deep_eq(a.second, b.second) && deep_eq(a.res, b.res);
}
bool operator==(const CompCoercion& a, const CompCoercion& b) {
  return a.value == b.value && a.dirt == b.dirt;
}

ValueTerm ValueTerm::variable(Name x) {
  ValueTerm v;
  v.kind = Kind::Var;
  v.var = std::move(x);
  return v;
}
ValueTerm ValueTerm::unit() { return ValueTerm{}; }
ValueTerm ValueTerm::lambda(Name x, ValueType a, CompTerm body) {
  ValueTerm v;
  v.kind = Kind::Lambda;
  v.var = std::move(x);
  v.annot = share(std::move(a));
  v.body = share(std::move(body));
  return v;
}
ValueTerm ValueTerm::cast(ValueTerm inner, ValueCoercion g) {
  ValueTerm v;
  v.kind = Kind::Cast;
  v.inner = share(std::move(inner));
  v.coercion = share(std::move(g));
  return v;
}

CompTerm CompTerm::ret(ValueTerm v) {
  CompTerm c;
  c.kind = Kind::Return;
  c.v1 = share(std::move(v));
  return c;
}
CompTerm CompTerm::op_call(Name op, ValueTerm arg, Name y, ValueType b, CompTerm cont) {
  CompTerm c;
  c.kind = Kind::OpCall;
  c.name = std::move(op);
  c.v1 = share(std::move(arg));
  c.bindvar = std::move(y);
  c.annot = share(std::move(b));
  c.c1 = share(std::move(cont));
  return c;
}
CompTerm CompTerm::do_(Name x, CompTerm first, CompTerm rest) {
  CompTerm c;
  c.kind = Kind::Do;
  c.name = std::move(x);
  c.c1 = share(std::move(first));
  c.c2 = share(std::move(rest));
  return c;
}
CompTerm CompTerm::app(ValueTerm f, ValueTerm a) {
  CompTerm c;
  c.kind = Kind::App;
  c.v1 = share(std::move(f));
  c.v2 = share(std::move(a));
  return c;
}
CompTerm CompTerm::let(Name x, ValueTerm v, CompTerm body) {
  CompTerm c;
  c.kind = Kind::LetVal;
  c.name = std::move(x);
  c.v1 = share(std::move(v));
  c.c1 = share(std::move(body));
  return c;
}
CompTerm CompTerm::cast(CompTerm inner, CompCoercion g) {
  CompTerm c;
  c.kind = Kind::Cast;
  c.c1 = share(std::move(inner));
  c.coercion = share(std::move(g));
  return c;
}

bool operator==(const ValueTerm& a, const ValueTerm& b) {
  return a.kind == b.kind && a.var == b.var && deep_eq(a.annot, b.annot) && deep_eq(a.body, b.body) &&
         deep_eq(a.inner, b.inner) && deep_eq(a.coercion, b.coercion);
}
bool operator==(const CompTerm& a, const CompTerm& b) {
  return a.kind == b.kind && a.name == b.name && a.bindvar == b.bindvar && deep_eq(a.v1, b.v1) &&
         deep_eq(a.v2, b.v2) && deep_eq(a.annot, b.annot) && deep_eq(a.c1, b.c1) &&
         deep_eq(a.c2, b.c2) && deep_eq(a.coercion, b.coercion);
}

Signature::Signature() {
  bases_["bool"] = 2;
  bases_["int"] = 3;
}

void Signature::add_op(const Name& op, ValueType param, ValueType result) {
  if (!is_closed(param)) fail(ErrorCode::InvalidSignature, "parameter type of " + op + " is not closed");
  if (!is_ground(result)) fail(ErrorCode::InvalidSignature, "result type of " + op + " is not ground");
  ops_[op] = OpSignature{std::move(param), std::move(result)};
}

void Signature::add_base(const Name& base, int size) {
  if (size < 1) fail(ErrorCode::InvalidSignature, "base " + base + " needs at least one element");
  bases_[base] = size;
}

const OpSignature& Signature::op(const Name& name) const {
  auto it = ops_.find(name);
  if (it == ops_.end()) fail(ErrorCode::UnknownOperation, name);
  return it->second;
}

int Signature::base_size(const Name& b) const {
  auto it = bases_.find(b);
  if (it == bases_.end()) fail(ErrorCode::UnknownBase, b);
  return it->second;
}

OpSet Signature::all_ops() const {
  OpSet s;
  for (const auto& [k, _] : ops_) s.insert(k);
  return s;
}

bool ParamContext::has_skel(const Name& s) const {
  for (const auto& n : skels)
    if (n == s) return true;
  return false;
}

bool ParamContext::has_dirt(const Name& d) const {
  for (const auto& n : dirts)
    if (n == d) return true;
  return false;
}

const TypeParamDecl* ParamContext::find_type(const Name& a) const {
  for (const auto& t : types)
    if (t.name == a) return &t;
  return nullptr;
}

const DirtCoercionDecl* ParamContext::find_dirt_coercion(const Name& p) const {
  for (const auto& c : dirt_coercions)
    if (c.name == p) return &c;
  return nullptr;
}

const TypeCoercionDecl* ParamContext::find_type_coercion(const Name& w) const {
  for (const auto& c : type_coercions)
    if (c.name == w) return &c;
  return nullptr;
}

std::set<Name> ParamContext::all_names() const {
  std::set<Name> out(skels.begin(), skels.end());
  out.insert(dirts.begin(), dirts.end());
  for (const auto& t : types) out.insert(t.name);
  for (const auto& c : dirt_coercions) out.insert(c.name);
  for (const auto& c : type_coercions) out.insert(c.name);
  return out;
}

bool ParamContext::empty() const {
  return skels.empty() && dirts.empty() && types.empty() && dirt_coercions.empty() &&
         type_coercions.empty();
}

const ValueType* TypingContext::lookup(const Name& x) const {
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
    if (it->var == x) return &it->type;
  return nullptr;
}

}  // namespace coreeff
