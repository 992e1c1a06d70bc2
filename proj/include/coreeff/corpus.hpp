#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coreeff/semantics.hpp"
#include "coreeff/syntax.hpp"

namespace coreeff {

struct CorpusItem {
  std::string name;
  Signature signature;
  ParamContext context;
  TypingContext gamma;
  std::optional<Term> term;
  std::optional<AnyType> declared_type;  // polarity source
};

// Parses and checks every judgment. Errors: ParseError ("line:col: ...")
// and JudgmentError ("item NAME: ...").
std::vector<CorpusItem> parse_corpus(const std::string& text);

// Corpus syntax, readable by parse_corpus.
std::string to_sexpr(const Skeleton& s);
std::string to_sexpr(const Dirt& d);
std::string to_sexpr(const ValueType& a);
std::string to_sexpr(const CompType& c);
std::string to_sexpr(const DirtCoercion& d);
std::string to_sexpr(const ValueCoercion& v);
std::string to_sexpr(const CompCoercion& c);
std::string to_sexpr(const ValueTerm& v);
std::string to_sexpr(const CompTerm& c);
std::string to_sexpr(const CorpusItem& item);

FreeParamSet polarity_of(const CorpusItem& item);

}  // namespace coreeff
