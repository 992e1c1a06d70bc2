#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coreeff {

using Name = std::string;
using OpSet = std::set<Name>;

struct Skeleton {
  enum class Kind { Param, Unit, Base, Arrow };
  Kind kind = Kind::Unit;
  Name name;  // Param, Base
  std::shared_ptr<const Skeleton> dom, cod;

  static Skeleton param(Name n);
  static Skeleton unit();
  static Skeleton base(Name n);
  static Skeleton arrow(Skeleton d, Skeleton c);

  bool is_param() const { return kind == Kind::Param; }
  const Skeleton& domain() const { return *dom; }
  const Skeleton& codomain() const { return *cod; }
};
bool operator==(const Skeleton& a, const Skeleton& b);

// Ops are kept sorted; the tail is either absent (empty dirt) or a dirt param.
struct Dirt {
  OpSet ops;
  std::optional<Name> tail;

  static Dirt empty() { return {}; }
  static Dirt param(Name d) { return Dirt{{}, std::move(d)}; }
  static Dirt closed(OpSet ops) { return Dirt{std::move(ops), std::nullopt}; }
  static Dirt open(OpSet ops, Name d) { return Dirt{std::move(ops), std::move(d)}; }

  bool is_empty() const { return ops.empty() && !tail; }
  bool is_param() const { return ops.empty() && tail.has_value(); }
  friend bool operator==(const Dirt&, const Dirt&) = default;
};

struct CompType;

struct ValueType {
  enum class Kind { Param, Unit, Base, Arrow };
  Kind kind = Kind::Unit;
  Name name;  // Param, Base
  std::shared_ptr<const ValueType> arg;
  std::shared_ptr<const CompType> res;

  static ValueType param(Name n);
  static ValueType unit();
  static ValueType base(Name n);
  static ValueType arrow(ValueType a, CompType c);

  bool is_param() const { return kind == Kind::Param; }
  const ValueType& argument() const { return *arg; }
  const CompType& result() const { return *res; }
};

struct CompType {
  ValueType value;
  Dirt dirt;
};

bool operator==(const ValueType& a, const ValueType& b);
bool operator==(const CompType& a, const CompType& b);

ValueType arrow(ValueType a, ValueType b, Dirt d);

struct DirtCoercion {
  enum class Kind { Param, Compose, ReflParam, ReflEmpty, EmptyUnder, UnionBoth, UnionRight };
  Kind kind = Kind::ReflEmpty;
  Name name;  // coercion param, dirt param or op
  // Compose: first is applied second (outer), second is applied first (inner).
  // UnionBoth / UnionRight: first is the extended coercion.
  std::shared_ptr<const DirtCoercion> first, second;

  static DirtCoercion param(Name n);
  static DirtCoercion compose(DirtCoercion outer, DirtCoercion inner);
  static DirtCoercion refl_param(Name d);
  static DirtCoercion refl_empty();
  static DirtCoercion empty_under(Name d);
  static DirtCoercion union_both(Name op, DirtCoercion d);
  static DirtCoercion union_right(Name op, DirtCoercion d);
};
bool operator==(const DirtCoercion& a, const DirtCoercion& b);

struct CompCoercion;

struct ValueCoercion {
  enum class Kind { Param, Compose, ReflParam, ReflUnit, ReflBase, Arrow };
  Kind kind = Kind::ReflUnit;
  Name name;  // coercion param, type param or base
  // Compose: first outer, second inner. Arrow: first is the argument coercion.
  std::shared_ptr<const ValueCoercion> first, second;
  std::shared_ptr<const CompCoercion> res;

  static ValueCoercion param(Name n);
  static ValueCoercion compose(ValueCoercion outer, ValueCoercion inner);
  static ValueCoercion refl_param(Name a);
  static ValueCoercion refl_unit();
  static ValueCoercion refl_base(Name b);
  static ValueCoercion arrow(ValueCoercion arg, CompCoercion res);
};

struct CompCoercion {
  ValueCoercion value;
  DirtCoercion dirt;
};
bool operator==(const ValueCoercion& a, const ValueCoercion& b);
bool operator==(const CompCoercion& a, const CompCoercion& b);

// Adds every op of `ops` on both sides (resp. on the right) of `d`.
DirtCoercion union_both(const OpSet& ops, DirtCoercion d);
DirtCoercion union_right(const OpSet& ops, DirtCoercion d);

struct CompTerm;

struct ValueTerm {
  enum class Kind { Var, Unit, Lambda, Cast };
  Kind kind = Kind::Unit;
  Name var;
  std::shared_ptr<const ValueType> annot;
  std::shared_ptr<const CompTerm> body;
  std::shared_ptr<const ValueTerm> inner;
  std::shared_ptr<const ValueCoercion> coercion;

  static ValueTerm variable(Name x);
  static ValueTerm unit();
  static ValueTerm lambda(Name x, ValueType a, CompTerm body);
  static ValueTerm cast(ValueTerm v, ValueCoercion g);
};

struct CompTerm {
  enum class Kind { Return, OpCall, Do, App, LetVal, Cast };
  Kind kind = Kind::Return;
  Name name;  // op name (OpCall) or bound variable (Do, LetVal)
  Name bindvar;  // OpCall continuation binder
  std::shared_ptr<const ValueTerm> v1, v2;
  std::shared_ptr<const ValueType> annot;
  std::shared_ptr<const CompTerm> c1, c2;
  std::shared_ptr<const CompCoercion> coercion;

  static CompTerm ret(ValueTerm v);
  static CompTerm op_call(Name op, ValueTerm arg, Name y, ValueType b, CompTerm cont);
  static CompTerm do_(Name x, CompTerm c1, CompTerm c2);
  static CompTerm app(ValueTerm f, ValueTerm a);
  static CompTerm let(Name x, ValueTerm v, CompTerm c);
  static CompTerm cast(CompTerm c, CompCoercion g);
};

bool operator==(const ValueTerm& a, const ValueTerm& b);
bool operator==(const CompTerm& a, const CompTerm& b);

struct OpSignature {
  ValueType param;
  ValueType result;
};

class Signature {
 public:
  Signature();  // knows the bases bool (2 elements) and int (3 elements)

  void add_op(const Name& op, ValueType param, ValueType result);
  void add_base(const Name& base, int size);

  bool has_op(const Name& op) const { return ops_.count(op) != 0; }
  bool has_base(const Name& b) const { return bases_.count(b) != 0; }
  const OpSignature& op(const Name& op) const;
  int base_size(const Name& b) const;
  OpSet all_ops() const;
  const std::map<Name, OpSignature>& ops() const { return ops_; }
  const std::map<Name, int>& bases() const { return bases_; }

 private:
  std::map<Name, OpSignature> ops_;
  std::map<Name, int> bases_;
};

struct TypeParamDecl {
  Name name;
  Skeleton skeleton;
  friend bool operator==(const TypeParamDecl&, const TypeParamDecl&) = default;
};

struct DirtCoercionDecl {
  Name name;
  Dirt lhs, rhs;
  friend bool operator==(const DirtCoercionDecl&, const DirtCoercionDecl&) = default;
};

struct TypeCoercionDecl {
  Name name;
  ValueType lhs, rhs;
  friend bool operator==(const TypeCoercionDecl&, const TypeCoercionDecl&) = default;
};

struct ParamContext {
  std::vector<Name> skels;
  std::vector<Name> dirts;
  std::vector<TypeParamDecl> types;
  std::vector<DirtCoercionDecl> dirt_coercions;
  std::vector<TypeCoercionDecl> type_coercions;

  bool has_skel(const Name& s) const;
  bool has_dirt(const Name& d) const;
  const TypeParamDecl* find_type(const Name& a) const;
  const DirtCoercionDecl* find_dirt_coercion(const Name& p) const;
  const TypeCoercionDecl* find_type_coercion(const Name& w) const;
  std::set<Name> all_names() const;
  bool empty() const;

  friend bool operator==(const ParamContext&, const ParamContext&) = default;
};

struct Binding {
  Name var;
  ValueType type;
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct TypingContext {
  std::vector<Binding> bindings;
  const ValueType* lookup(const Name& x) const;  // innermost binding wins
  friend bool operator==(const TypingContext&, const TypingContext&) = default;
};

}  // namespace coreeff
