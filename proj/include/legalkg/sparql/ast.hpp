#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "legalkg/rdf/term.hpp"

namespace legalkg::sparql {

struct Var {
  std::string name;  // without the leading '?' or '$'

  friend bool operator==(const Var&, const Var&) = default;
};

using PatternTerm = std::variant<rdf::Term, Var>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;  // an Iri or a Var
  PatternTerm object;
};

struct Expr {
  enum class Op {
    Constant,
    Variable,
    Or,
    And,
    Not,
    Equal,
    NotEqual,
    Less,
    Greater,
    LessEqual,
    GreaterEqual,
    Regex,
    Str,
    Lang,
    Datatype,
    Bound,
  };

  Op op = Op::Constant;
  std::optional<rdf::Term> constant;
  std::string variable;
  std::vector<Expr> args;
};

struct GroupPattern {
  // Triple patterns, nested groups and OPTIONALs in source order.
  struct Element {
    enum class Kind { Triple, Group, Optional };

    Kind kind = Kind::Triple;
    std::optional<TriplePattern> triple;
    std::vector<GroupPattern> group;  // the nested group, for Group and Optional

    static Element of(TriplePattern tp) { return {Kind::Triple, std::move(tp), {}}; }
    static Element nested(Kind k, GroupPattern g);
  };
  std::vector<Element> elements;
  std::vector<Expr> filters;  // scoped to the whole group
};

inline GroupPattern::Element GroupPattern::Element::nested(Kind k, GroupPattern g) {
  Element e{k, std::nullopt, {}};
  e.group.push_back(std::move(g));
  return e;
}

struct OrderCondition {
  Expr expr;
  bool descending = false;
};

struct Query {
  enum class Form { Select, Ask };

  Form form = Form::Select;
  bool distinct = false;
  bool select_all = false;
  std::vector<std::string> projection;  // resolved list, also for SELECT *
  std::map<std::string, std::string> prefixes;
  GroupPattern where;
  std::vector<OrderCondition> order_by;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> offset;
};

// Variables of the pattern in order of first appearance (the SELECT * projection).
std::vector<std::string> pattern_variables(const GroupPattern& g);

}  // namespace legalkg::sparql
