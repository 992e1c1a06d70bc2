#include "coreeff/print.hpp"

#include <map>
#include <sstream>

namespace coreeff {

namespace {

std::string join_ops(const OpSet& ops) {
  std::string out;
  for (const auto& op : ops) {
    if (!out.empty()) out += ",";
    out += op;
  }
  return out;
}

}  // namespace

std::string to_string(const Skeleton& s) {
  switch (s.kind) {
    case Skeleton::Kind::Param:
    case Skeleton::Kind::Base:
      return s.name;
    case Skeleton::Kind::Unit:
      return "Unit";
    case Skeleton::Kind::Arrow:
      return "(" + to_string(s.domain()) + " -> " + to_string(s.codomain()) + ")";
  }
  return "?";
}

std::string to_string(const Dirt& d) {
  if (d.ops.empty()) return d.tail ? *d.tail : "{}";
  std::string out = "{" + join_ops(d.ops) + "}";
  if (d.tail) out += "+" + *d.tail;
  return out;
}

std::string to_string(const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param:
    case ValueType::Kind::Base:
      return a.name;
    case ValueType::Kind::Unit:
      return "Unit";
    case ValueType::Kind::Arrow:
      return "(" + to_string(a.argument()) + " -> " + to_string(a.result()) + ")";
  }
  return "?";
}

std::string to_string(const CompType& c) { return to_string(c.value) + " ! " + to_string(c.dirt); }

std::string to_string(const DirtCoercion& d) {
  using K = DirtCoercion::Kind;
  switch (d.kind) {
    case K::Param:
      return d.name;
    case K::Compose:
      return "(" + to_string(*d.first) + " . " + to_string(*d.second) + ")";
    case K::ReflParam:
      return "refl(" + d.name + ")";
    case K::ReflEmpty:
      return "refl({})";
    case K::EmptyUnder:
      return "empty(" + d.name + ")";
    case K::UnionBoth:
      return d.name + "+(" + to_string(*d.first) + ")";
    case K::UnionRight:
      return d.name + ">+(" + to_string(*d.first) + ")";
  }
  return "?";
}

std::string to_string(const ValueCoercion& v) {
  using K = ValueCoercion::Kind;
  switch (v.kind) {
    case K::Param:
      return v.name;
    case K::Compose:
      return "(" + to_string(*v.first) + " . " + to_string(*v.second) + ")";
    case K::ReflParam:
    case K::ReflBase:
      return "refl(" + v.name + ")";
    case K::ReflUnit:
      return "refl(Unit)";
    case K::Arrow:
      return "(" + to_string(*v.first) + " -> " + to_string(*v.res) + ")";
  }
  return "?";
}

std::string to_string(const CompCoercion& c) { return to_string(c.value) + " ! " + to_string(c.dirt); }

std::string to_string(const ValueTerm& v) {
  switch (v.kind) {
    case ValueTerm::Kind::Var:
      return v.var;
    case ValueTerm::Kind::Unit:
      return "unit";
    case ValueTerm::Kind::Lambda:
      return "(fun (" + v.var + " : " + to_string(*v.annot) + ") -> " + to_string(*v.body) + ")";
    case ValueTerm::Kind::Cast:
      return "(" + to_string(*v.inner) + " |> " + to_string(*v.coercion) + ")";
  }
  return "?";
}

std::string to_string(const CompTerm& c) {
  switch (c.kind) {
    case CompTerm::Kind::Return:
      return "return " + to_string(*c.v1);
    case CompTerm::Kind::OpCall:
      return c.name + "(" + to_string(*c.v1) + "; " + c.bindvar + " : " + to_string(*c.annot) + ". " +
             to_string(*c.c1) + ")";
    case CompTerm::Kind::Do:
      return "(do " + c.name + " <- " + to_string(*c.c1) + " in " + to_string(*c.c2) + ")";
    case CompTerm::Kind::App:
      return "(" + to_string(*c.v1) + " " + to_string(*c.v2) + ")";
    case CompTerm::Kind::LetVal:
      return "(let " + c.name + " = " + to_string(*c.v1) + " in " + to_string(*c.c1) + ")";
    case CompTerm::Kind::Cast:
      return "(" + to_string(*c.c1) + " |> " + to_string(*c.coercion) + ")";
  }
  return "?";
}

std::string to_string(const ParamContext& ctx) {
  std::ostringstream os;
  for (const auto& s : ctx.skels) os << "skel " << s << "\n";
  for (const auto& d : ctx.dirts) os << "dirt " << d << "\n";
  for (const auto& t : ctx.types) os << t.name << " : " << to_string(t.skeleton) << "\n";
  for (const auto& c : ctx.dirt_coercions)
    os << c.name << " : " << to_string(c.lhs) << " <= " << to_string(c.rhs) << "\n";
  for (const auto& c : ctx.type_coercions)
    os << c.name << " : " << to_string(c.lhs) << " <= " << to_string(c.rhs) << "\n";
  return os.str();
}

namespace {

class Renamer {
 public:
  std::string type_name(const Name& n) {
    auto it = types_.find(n);
    if (it != types_.end()) return it->second;
    static const char* const kGreek[] = {"α", "β", "γ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν"};
    std::size_t i = types_.size();
    std::string out = i < 12 ? kGreek[i] : "α" + std::to_string(i);
    types_[n] = out;
    return out;
  }

  std::string dirt_name(const Name& n) {
    auto it = dirts_.find(n);
    if (it != dirts_.end()) return it->second;
    static const char* const kPrimes[] = {"", "′", "″", "‴"};
    std::size_t i = dirts_.size();
    std::string out = i < 4 ? std::string("δ") + kPrimes[i] : "δ" + std::to_string(i);
    dirts_[n] = out;
    return out;
  }

 private:
  std::map<Name, std::string> types_, dirts_;
};

std::string pretty_v(const ValueType& a, Renamer& r);

std::string pretty_dirt(const Dirt& d, Renamer& r) {
  std::string out;
  if (!d.ops.empty()) out = "{" + join_ops(d.ops) + "}";
  if (d.tail) {
    if (!out.empty()) out += "∪";
    out += r.dirt_name(*d.tail);
  }
  return out;
}

std::string pretty_v(const ValueType& a, Renamer& r) {
  switch (a.kind) {
    case ValueType::Kind::Param:
      return r.type_name(a.name);
    case ValueType::Kind::Unit:
      return "Unit";
    case ValueType::Kind::Base:
      return a.name;
    case ValueType::Kind::Arrow: {
      std::string lhs = pretty_v(a.argument(), r);
      if (a.argument().kind == ValueType::Kind::Arrow) lhs = "(" + lhs + ")";
      const Dirt& d = a.result().dirt;
      std::string arrow = "→";
      if (!d.is_empty()) {
        std::string ds = pretty_dirt(d, r);
        arrow += d.is_param() ? "^" + ds : "^{" + ds + "}";
      }
      return lhs + " " + arrow + " " + pretty_v(a.result().value, r);
    }
  }
  return "?";
}

struct Bijection {
  std::map<Name, Name> fwd, bwd;
  bool link(const Name& a, const Name& b) {
    auto f = fwd.find(a);
    auto g = bwd.find(b);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a] = b;
      bwd[b] = a;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b && g->second == a;
  }
};

bool alpha_v(const ValueType& a, const ValueType& b, Bijection& ty, Bijection& di) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ValueType::Kind::Param:
      return ty.link(a.name, b.name);
    case ValueType::Kind::Unit:
      return true;
    case ValueType::Kind::Base:
      return a.name == b.name;
    case ValueType::Kind::Arrow: {
      const Dirt& da = a.result().dirt;
      const Dirt& db = b.result().dirt;
      if (da.ops != db.ops || da.tail.has_value() != db.tail.has_value()) return false;
      if (da.tail && !di.link(*da.tail, *db.tail)) return false;
      return alpha_v(a.argument(), b.argument(), ty, di) &&
             alpha_v(a.result().value, b.result().value, ty, di);
    }
  }
  return false;
}

}  // namespace

std::string pretty_type(const ValueType& a) {
  Renamer r;
  return pretty_v(a, r);
}

bool alpha_equivalent(const ValueType& a, const ValueType& b) {
  Bijection ty, di;
  return alpha_v(a, b, ty, di);
}

}  // namespace coreeff
