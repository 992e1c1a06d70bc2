#include "coreeff/corpus.hpp"

#include <functional>
#include <sstream>

#include "coreeff/check.hpp"
#include "coreeff/error.hpp"
#include "coreeff/polarity.hpp"

namespace coreeff {

namespace {

// ---------------------------------------------------------------- s-expressions

struct Sexp {
  bool atom = false;
  std::string text;
  std::vector<Sexp> list;
  int line = 1, col = 1;
};

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
  fail(ErrorCode::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

[[noreturn]] void parse_fail(const Sexp& at, const std::string& msg) { parse_fail(at.line, at.col, msg); }

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  Sexp read() {
    Sexp e;
    e.line = line_;
    e.col = col_;
    if (s_[pos_] == ')') parse_fail(line_, col_, "unexpected ')'");
    if (s_[pos_] == '(') {
      advance();
      for (;;) {
        skip();
        if (pos_ >= s_.size()) parse_fail(e.line, e.col, "unclosed '('");
        if (s_[pos_] == ')') {
          advance();
          return e;
        }
        e.list.push_back(read());
      }
    }
    e.atom = true;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
      e.text += c;
      advance();
    }
    return e;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

const std::string& head(const Sexp& e) {
  static const std::string none;
  if (e.atom || e.list.empty() || !e.list[0].atom) return none;
  return e.list[0].text;
}

const std::string& atom(const Sexp& e, const char* what) {
  if (!e.atom) parse_fail(e, std::string("expected ") + what);
  return e.text;
}

void arity(const Sexp& e, std::size_t n) {
  if (e.list.size() != n)
    parse_fail(e, "'" + head(e) + "' takes " + std::to_string(n - 1) + " argument(s), got " +
                      std::to_string(e.list.size() - 1));
}

// ---------------------------------------------------------------- sorts

Skeleton parse_skel(const Sexp& e) {
  const auto& h = head(e);
  if (h == "param") {
    arity(e, 2);
    return Skeleton::param(atom(e.list[1], "skeleton parameter"));
  }
  if (h == "unit") {
    arity(e, 1);
    return Skeleton::unit();
  }
  if (h == "base") {
    arity(e, 2);
    return Skeleton::base(atom(e.list[1], "base name"));
  }
  if (h == "arrow") {
    arity(e, 3);
    return Skeleton::arrow(parse_skel(e.list[1]), parse_skel(e.list[2]));
  }
  parse_fail(e, "expected a skeleton");
}

Dirt parse_dirt(const Sexp& e) {
  if (head(e) != "dirt" || e.list.size() < 2 || e.list.size() > 3) parse_fail(e, "expected (dirt (OPS...) TAIL?)");
  if (e.list[1].atom) parse_fail(e.list[1], "expected an operation list");
  Dirt d;
  for (const auto& op : e.list[1].list) {
    const auto& name = atom(op, "operation name");
    if (!d.ops.insert(name).second) parse_fail(op, "duplicate operation " + name);
  }
  if (e.list.size() == 3) d.tail = atom(e.list[2], "dirt parameter");
  return d;
}

CompType parse_ctype(const Sexp& e);

ValueType parse_type(const Sexp& e) {
  const auto& h = head(e);
  if (h == "param") {
    arity(e, 2);
    return ValueType::param(atom(e.list[1], "type parameter"));
  }
  if (h == "unit") {
    arity(e, 1);
    return ValueType::unit();
  }
  if (h == "base") {
    arity(e, 2);
    return ValueType::base(atom(e.list[1], "base name"));
  }
  if (h == "arrow") {
    arity(e, 3);
    return ValueType::arrow(parse_type(e.list[1]), parse_ctype(e.list[2]));
  }
  parse_fail(e, "expected a value type");
}

CompType parse_ctype(const Sexp& e) {
  if (head(e) != "comp") parse_fail(e, "expected (comp TYPE DIRT)");
  arity(e, 3);
  return CompType{parse_type(e.list[1]), parse_dirt(e.list[2])};
}

OpSet parse_ops(const Sexp& e) {
  OpSet out;
  if (e.atom) {
    out.insert(e.text);
    return out;
  }
  for (const auto& op : e.list) out.insert(atom(op, "operation name"));
  return out;
}

DirtCoercion parse_dco(const Sexp& e) {
  const auto& h = head(e);
  if (h == "dparam") {
    arity(e, 2);
    return DirtCoercion::param(atom(e.list[1], "dirt coercion parameter"));
  }
  if (h == "dcomp") {
    arity(e, 3);
    return DirtCoercion::compose(parse_dco(e.list[1]), parse_dco(e.list[2]));
  }
  if (h == "drefl") {
    arity(e, 2);
    return DirtCoercion::refl_param(atom(e.list[1], "dirt parameter"));
  }
  if (h == "drefl-empty") {
    arity(e, 1);
    return DirtCoercion::refl_empty();
  }
  if (h == "dempty") {
    arity(e, 2);
    return DirtCoercion::empty_under(atom(e.list[1], "dirt parameter"));
  }
  if (h == "dunion-both") {
    arity(e, 3);
    return union_both(parse_ops(e.list[1]), parse_dco(e.list[2]));
  }
  if (h == "dunion-right") {
    arity(e, 3);
    return union_right(parse_ops(e.list[1]), parse_dco(e.list[2]));
  }
  parse_fail(e, "expected a dirt coercion");
}

CompCoercion parse_cco(const Sexp& e);

ValueCoercion parse_vco(const Sexp& e) {
  const auto& h = head(e);
  if (h == "vparam") {
    arity(e, 2);
    return ValueCoercion::param(atom(e.list[1], "type coercion parameter"));
  }
  if (h == "vcomp") {
    arity(e, 3);
    return ValueCoercion::compose(parse_vco(e.list[1]), parse_vco(e.list[2]));
  }
  if (h == "vrefl") {
    arity(e, 2);
    return ValueCoercion::refl_param(atom(e.list[1], "type parameter"));
  }
  if (h == "vrefl-unit") {
    arity(e, 1);
    return ValueCoercion::refl_unit();
  }
  if (h == "vrefl-base") {
    arity(e, 2);
    return ValueCoercion::refl_base(atom(e.list[1], "base name"));
  }
  if (h == "varrow") {
    arity(e, 3);
    return ValueCoercion::arrow(parse_vco(e.list[1]), parse_cco(e.list[2]));
  }
  parse_fail(e, "expected a value coercion");
}

CompCoercion parse_cco(const Sexp& e) {
  if (head(e) != "cdirty") parse_fail(e, "expected (cdirty VCO DCO)");
  arity(e, 3);
  return CompCoercion{parse_vco(e.list[1]), parse_dco(e.list[2])};
}

// ---------------------------------------------------------------- terms

bool is_comp_form(const Sexp& e) {
  static const std::set<std::string> heads = {"return", "op", "do", "app", "let", "castc", "comp"};
  return !e.atom && heads.count(head(e));
}

CompTerm parse_comp(const Sexp& e);

ValueTerm parse_value(const Sexp& e) {
  if (e.atom) return e.text == "unit" ? ValueTerm::unit() : ValueTerm::variable(e.text);
  const auto& h = head(e);
  if (h == "value") {
    arity(e, 2);
    return parse_value(e.list[1]);
  }
  if (h == "var") {
    arity(e, 2);
    return ValueTerm::variable(atom(e.list[1], "variable"));
  }
  if (h == "lam") {
    arity(e, 4);
    return ValueTerm::lambda(atom(e.list[1], "variable"), parse_type(e.list[2]), parse_comp(e.list[3]));
  }
  if (h == "castv") {
    arity(e, 3);
    return ValueTerm::cast(parse_value(e.list[1]), parse_vco(e.list[2]));
  }
  parse_fail(e, "expected a value term");
}

CompTerm parse_comp(const Sexp& e) {
  const auto& h = head(e);
  if (h == "comp") {
    arity(e, 2);
    return parse_comp(e.list[1]);
  }
  if (h == "return") {
    arity(e, 2);
    return CompTerm::ret(parse_value(e.list[1]));
  }
  if (h == "op") {
    arity(e, 6);
    return CompTerm::op_call(atom(e.list[1], "operation"), parse_value(e.list[2]), atom(e.list[3], "variable"),
                             parse_type(e.list[4]), parse_comp(e.list[5]));
  }
  if (h == "do") {
    arity(e, 4);
    return CompTerm::do_(atom(e.list[1], "variable"), parse_comp(e.list[2]), parse_comp(e.list[3]));
  }
  if (h == "app") {
    arity(e, 3);
    return CompTerm::app(parse_value(e.list[1]), parse_value(e.list[2]));
  }
  if (h == "let") {
    arity(e, 4);
    return CompTerm::let(atom(e.list[1], "variable"), parse_value(e.list[2]), parse_comp(e.list[3]));
  }
  if (h == "castc") {
    arity(e, 3);
    return CompTerm::cast(parse_comp(e.list[1]), parse_cco(e.list[2]));
  }
  parse_fail(e, "expected a computation term");
}

// ---------------------------------------------------------------- items

void check_bases(const Signature& sig, const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Base:
      if (!sig.has_base(a.name)) fail(ErrorCode::UnknownBase, a.name);
      return;
    case ValueType::Kind::Arrow:
      check_bases(sig, a.argument());
      check_bases(sig, a.result().value);
      return;
    default:
      return;
  }
}

CorpusItem parse_item(const Sexp& e) {
  if (head(e) != "item" || e.list.size() < 2) parse_fail(e, "expected (item NAME ...)");
  CorpusItem item;
  item.name = atom(e.list[1], "item name");
  const Sexp* term = nullptr;
  const Sexp* poltype = nullptr;
  bool seen_context = false;
  struct OpEntry {
    const Sexp* at;
    Name name;
    ValueType param, result;
  };
  std::vector<OpEntry> ops;
  for (std::size_t i = 2; i < e.list.size(); ++i) {
    const Sexp& part = e.list[i];
    const auto& h = head(part);
    if (h == "signature") {
      for (std::size_t k = 1; k < part.list.size(); ++k) {
        const Sexp& entry = part.list[k];
        if (head(entry) == "op") {
          arity(entry, 4);
          ops.push_back({&entry, atom(entry.list[1], "operation"), parse_type(entry.list[2]), parse_type(entry.list[3])});
        } else if (head(entry) == "base") {
          arity(entry, 3);
          int n = 0;
          try {
            n = std::stoi(atom(entry.list[2], "base size"));
          } catch (const std::logic_error&) {
            parse_fail(entry.list[2], "expected a number");
          }
          try {
            item.signature.add_base(atom(entry.list[1], "base name"), n);
          } catch (const Error& err) {
            fail(ErrorCode::JudgmentError, "item " + item.name + ": " + err.what());
          }
        } else {
          parse_fail(entry, "expected (op NAME TYPE TYPE) or (base NAME N)");
        }
      }
    } else if (h == "context") {
      if (seen_context) parse_fail(part, "duplicate context");
      seen_context = true;
      for (std::size_t k = 1; k < part.list.size(); ++k) {
        const Sexp& d = part.list[k];
        const auto& dh = head(d);
        if (dh == "skel") {
          arity(d, 2);
          item.context.skels.push_back(atom(d.list[1], "skeleton parameter"));
        } else if (dh == "dirt") {
          arity(d, 2);
          item.context.dirts.push_back(atom(d.list[1], "dirt parameter"));
        } else if (dh == "typaram") {
          arity(d, 3);
          item.context.types.push_back({atom(d.list[1], "type parameter"), parse_skel(d.list[2])});
        } else if (dh == "tyco") {
          arity(d, 4);
          item.context.type_coercions.push_back(
              {atom(d.list[1], "coercion parameter"), parse_type(d.list[2]), parse_type(d.list[3])});
        } else if (dh == "dco") {
          arity(d, 4);
          item.context.dirt_coercions.push_back(
              {atom(d.list[1], "coercion parameter"), parse_dirt(d.list[2]), parse_dirt(d.list[3])});
        } else {
          parse_fail(d, "expected skel, dirt, typaram, tyco or dco");
        }
      }
    } else if (h == "poltype") {
      arity(part, 2);
      poltype = &part.list[1];
    } else if (h == "term") {
      if (part.list.size() == 3 && head(part.list[1]) == "gamma") {
        for (std::size_t k = 1; k < part.list[1].list.size(); ++k) {
          const Sexp& b = part.list[1].list[k];
          if (b.atom || b.list.size() != 2) parse_fail(b, "expected (VAR TYPE)");
          item.gamma.bindings.push_back({atom(b.list[0], "variable"), parse_type(b.list[1])});
        }
        term = &part.list[2];
      } else {
        arity(part, 2);
        term = &part.list[1];
      }
    } else {
      parse_fail(part, "expected signature, context, poltype or term");
    }
  }

  std::optional<AnyType> declared;
  if (poltype) declared = head(*poltype) == "comp" ? AnyType{parse_ctype(*poltype)} : AnyType{parse_type(*poltype)};
  if (term) item.term = is_comp_form(*term) ? Term{parse_comp(*term)} : Term{parse_value(*term)};

  try {
    for (const auto& op : ops) {
      check_bases(item.signature, op.param);
      check_bases(item.signature, op.result);
      item.signature.add_op(op.name, op.param, op.result);
    }
    wf_param_context(item.signature, item.context);
    wf_typing_context(item.signature, item.context, item.gamma);
    if (declared) {
      if (const auto* a = std::get_if<ValueType>(&*declared))
        skeleton_of_vtype(item.signature, item.context, *a);
      else
        skeleton_of_ctype(item.signature, item.context, std::get<CompType>(*declared));
    }
    if (item.term) {
      AnyType actual;
      if (const auto* v = std::get_if<ValueTerm>(&*item.term))
        actual = typecheck_value(item.signature, item.context, item.gamma, *v);
      else
        actual = typecheck_comp(item.signature, item.context, item.gamma, std::get<CompTerm>(*item.term));
      if (declared && !(*declared == actual))
        fail(ErrorCode::TypeMismatch, "term type differs from the declared polarity type");
      if (!declared) declared = actual;
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ParseError || err.code() == ErrorCode::JudgmentError) throw;
    fail(ErrorCode::JudgmentError, "item " + item.name + ": " + error_code_name(err.code()) + ": " + err.detail());
  }
  item.declared_type = std::move(declared);
  return item;
}

std::string ops_sexpr(const OpSet& ops) {
  std::string out = "(";
  bool first = true;
  for (const auto& op : ops) {
    if (!first) out += " ";
    out += op;
    first = false;
  }
  return out + ")";
}

}  // namespace

std::vector<CorpusItem> parse_corpus(const std::string& text) {
  std::vector<CorpusItem> out;
  std::set<std::string> names;
  for (const auto& e : Reader(text).read_all()) {
    out.push_back(parse_item(e));
    if (!names.insert(out.back().name).second) parse_fail(e, "duplicate item name " + out.back().name);
  }
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_sexpr(const Skeleton& s) {
  switch (s.kind) {
    case Skeleton::Kind::Param:
      return "(param " + s.name + ")";
    case Skeleton::Kind::Unit:
      return "(unit)";
    case Skeleton::Kind::Base:
      return "(base " + s.name + ")";
    case Skeleton::Kind::Arrow:
      return "(arrow " + to_sexpr(s.domain()) + " " + to_sexpr(s.codomain()) + ")";
  }
  return "";
}

std::string to_sexpr(const Dirt& d) {
  return "(dirt " + ops_sexpr(d.ops) + (d.tail ? " " + *d.tail : "") + ")";
}

std::string to_sexpr(const ValueType& a) {
  switch (a.kind) {
    case ValueType::Kind::Param:
      return "(param " + a.name + ")";
    case ValueType::Kind::Unit:
      return "(unit)";
    case ValueType::Kind::Base:
      return "(base " + a.name + ")";
    case ValueType::Kind::Arrow:
      return "(arrow " + to_sexpr(a.argument()) + " " + to_sexpr(a.result()) + ")";
  }
  return "";
}

std::string to_sexpr(const CompType& c) { return "(comp " + to_sexpr(c.value) + " " + to_sexpr(c.dirt) + ")"; }

std::string to_sexpr(const DirtCoercion& d) {
  using K = DirtCoercion::Kind;
  switch (d.kind) {
    case K::Param:
      return "(dparam " + d.name + ")";
    case K::Compose:
      return "(dcomp " + to_sexpr(*d.first) + " " + to_sexpr(*d.second) + ")";
    case K::ReflParam:
      return "(drefl " + d.name + ")";
    case K::ReflEmpty:
      return "(drefl-empty)";
    case K::EmptyUnder:
      return "(dempty " + d.name + ")";
    case K::UnionBoth:
      return "(dunion-both " + d.name + " " + to_sexpr(*d.first) + ")";
    case K::UnionRight:
      return "(dunion-right " + d.name + " " + to_sexpr(*d.first) + ")";
  }
  return "";
}

std::string to_sexpr(const ValueCoercion& v) {
  using K = ValueCoercion::Kind;
  switch (v.kind) {
    case K::Param:
      return "(vparam " + v.name + ")";
    case K::Compose:
      return "(vcomp " + to_sexpr(*v.first) + " " + to_sexpr(*v.second) + ")";
    case K::ReflParam:
      return "(vrefl " + v.name + ")";
    case K::ReflUnit:
      return "(vrefl-unit)";
    case K::ReflBase:
      return "(vrefl-base " + v.name + ")";
    case K::Arrow:
      return "(varrow " + to_sexpr(*v.first) + " " + to_sexpr(*v.res) + ")";
  }
  return "";
}

std::string to_sexpr(const CompCoercion& c) {
  return "(cdirty " + to_sexpr(c.value) + " " + to_sexpr(c.dirt) + ")";
}

std::string to_sexpr(const ValueTerm& v) {
  switch (v.kind) {
    case ValueTerm::Kind::Var:
      return "(var " + v.var + ")";
    case ValueTerm::Kind::Unit:
      return "unit";
    case ValueTerm::Kind::Lambda:
      return "(lam " + v.var + " " + to_sexpr(*v.annot) + " " + to_sexpr(*v.body) + ")";
    case ValueTerm::Kind::Cast:
      return "(castv " + to_sexpr(*v.inner) + " " + to_sexpr(*v.coercion) + ")";
  }
  return "";
}

std::string to_sexpr(const CompTerm& c) {
  switch (c.kind) {
    case CompTerm::Kind::Return:
      return "(return " + to_sexpr(*c.v1) + ")";
    case CompTerm::Kind::OpCall:
      return "(op " + c.name + " " + to_sexpr(*c.v1) + " " + c.bindvar + " " + to_sexpr(*c.annot) + " " +
             to_sexpr(*c.c1) + ")";
    case CompTerm::Kind::Do:
      return "(do " + c.name + " " + to_sexpr(*c.c1) + " " + to_sexpr(*c.c2) + ")";
    case CompTerm::Kind::App:
      return "(app " + to_sexpr(*c.v1) + " " + to_sexpr(*c.v2) + ")";
    case CompTerm::Kind::LetVal:
      return "(let " + c.name + " " + to_sexpr(*c.v1) + " " + to_sexpr(*c.c1) + ")";
    case CompTerm::Kind::Cast:
      return "(castc " + to_sexpr(*c.c1) + " " + to_sexpr(*c.coercion) + ")";
  }
  return "";
}

std::string to_sexpr(const CorpusItem& item) {
  std::ostringstream os;
  os << "(item " << item.name << "\n";
  const Signature defaults;
  std::string sig;
  for (const auto& [b, n] : item.signature.bases())
    if (!defaults.has_base(b) || defaults.base_size(b) != n) sig += "\n    (base " + b + " " + std::to_string(n) + ")";
  for (const auto& [op, os_] : item.signature.ops())
    sig += "\n    (op " + op + " " + to_sexpr(os_.param) + " " + to_sexpr(os_.result) + ")";
  if (!sig.empty()) os << "  (signature" << sig << ")\n";
  os << "  (context";
  const auto& c = item.context;
  for (const auto& s : c.skels) os << "\n    (skel " << s << ")";
  for (const auto& d : c.dirts) os << "\n    (dirt " << d << ")";
  for (const auto& t : c.types) os << "\n    (typaram " << t.name << " " << to_sexpr(t.skeleton) << ")";
  for (const auto& w : c.type_coercions)
    os << "\n    (tyco " << w.name << " " << to_sexpr(w.lhs) << " " << to_sexpr(w.rhs) << ")";
  for (const auto& p : c.dirt_coercions)
    os << "\n    (dco " << p.name << " " << to_sexpr(p.lhs) << " " << to_sexpr(p.rhs) << ")";
  os << ")";
  if (item.declared_type) {
    os << "\n  (poltype ";
    if (const auto* a = std::get_if<ValueType>(&*item.declared_type))
      os << to_sexpr(*a);
    else
      os << to_sexpr(std::get<CompType>(*item.declared_type));
    os << ")";
  }
  if (item.term) {
    os << "\n  (term ";
    if (!item.gamma.bindings.empty()) {
      os << "(gamma";
      for (const auto& b : item.gamma.bindings) os << " (" << b.var << " " << to_sexpr(b.type) << ")";
      os << ") ";
    }
    if (const auto* v = std::get_if<ValueTerm>(&*item.term))
      os << "(value " << to_sexpr(*v) << ")";
    else
      os << to_sexpr(std::get<CompTerm>(*item.term));
    os << ")";
  }
  os << ")\n";
  return os.str();
}

FreeParamSet polarity_of(const CorpusItem& item) {
  FreeParamSet f;
  if (item.declared_type) {
    if (const auto* a = std::get_if<ValueType>(&*item.declared_type))
      f = free_params(*a);
    else
      f = free_params(std::get<CompType>(*item.declared_type));
  }
  f.unite(free_params(item.gamma).swapped());
  return f;
}

}  // namespace coreeff
