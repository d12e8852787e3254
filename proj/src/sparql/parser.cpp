#include "legalkg/sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "../rdf/cursor.hpp"

namespace legalkg::sparql {

namespace {

using rdf::detail::Cursor;

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         (static_cast<unsigned char>(c) & 0x80) != 0;
}
bool is_var_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : cur_(text) {}

  Query parse() {
    Query q;
    prologue(q);
    const std::string kw = peek_keyword();
    if (kw == "SELECT") {
      take_keyword();
      q.form = Query::Form::Select;
      select_clause(q);
    } else if (kw == "ASK") {
      take_keyword();
      q.form = Query::Form::Ask;
    } else if (kw == "CONSTRUCT" || kw == "DESCRIBE") {
      unsupported(kw);
    } else if (kw == "INSERT" || kw == "DELETE" || kw == "LOAD" || kw == "CLEAR" || kw == "DROP" || kw == "CREATE" ||
               kw == "WITH") {
      unsupported("SPARQL Update");
    } else {
      fail("expected SELECT or ASK");
    }
    dataset_clause();
    ws();
    if (peek_keyword() == "WHERE") take_keyword();
    ws();
    if (cur_.peek() != '{') fail("expected '{' to open the WHERE clause");
    q.where = group();
    modifiers(q);
    ws();
    if (!cur_.eof()) fail("unexpected trailing input");

    const auto vars = pattern_variables(q.where);
    if (q.form == Query::Form::Select && q.select_all) q.projection = vars;
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, cur_.line(), cur_.column(), cur_.offset());
  }
  [[noreturn]] void unsupported(const std::string& feature) const {
    throw UnsupportedFeatureError(feature, cur_.line(), cur_.column(), cur_.offset());
  }

  // Runs a cursor primitive, translating its errors into query syntax errors.
  template <typename F>
  auto guarded(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const rdf::SyntaxError& e) {
      throw SyntaxError(e.detail(), e.line(), e.column(), cur_.offset());
    }
  }

  void ws() { cur_.skip_ws(true); }

  std::string peek_keyword() {
    ws();
    std::size_t n = 0;
    while (std::isalpha(static_cast<unsigned char>(cur_.peek(n)))) ++n;
    std::string word;
    for (std::size_t i = 0; i < n; ++i) word += cur_.peek(i);
    // A pname such as "select:x" is not a keyword.
    if (cur_.peek(n) == ':') return {};
    return upper(word);
  }
  std::string take_keyword() {
    std::string kw = peek_keyword();
    cur_.advance(kw.size());
    return kw;
  }
  void expect_keyword(std::string_view kw) {
    if (peek_keyword() != kw) fail("expected " + std::string(kw));
    take_keyword();
  }
  bool accept(char c) {
    ws();
    if (cur_.peek() != c) return false;
    cur_.get();
    return true;
  }
  void expect(char c) {
    ws();
    if (cur_.peek() != c) fail(std::string("expected '") + c + "'");
    cur_.get();
  }

  void prologue(Query& q) {
    while (true) {
      const std::string kw = peek_keyword();
      if (kw == "BASE") unsupported("BASE");
      if (kw != "PREFIX") return;
      take_keyword();
      ws();
      std::string name;
      if (is_name_start(cur_.peek())) {
        while (is_name_char(cur_.peek()) || (cur_.peek() == '.' && is_name_char(cur_.peek(1)))) name += cur_.get();
      }
      if (cur_.peek() != ':') fail("expected prefix name ending in ':'");
      cur_.get();
      ws();
      if (cur_.peek() != '<') fail("expected IRI after PREFIX " + name + ":");
      std::string ns = guarded([&] { return cur_.read_iriref(); });
      if (!rdf::is_absolute_iri(ns)) fail("prefix IRI must be absolute");
      prefixes_[name] = ns;
      q.prefixes[name] = ns;
    }
  }

  void select_clause(Query& q) {
    std::string kw = peek_keyword();
    if (kw == "DISTINCT") {
      take_keyword();
      q.distinct = true;
    } else if (kw == "REDUCED") {
      unsupported("REDUCED");
    }
    ws();
    if (accept('*')) {
      q.select_all = true;
      return;
    }
    std::set<std::string> seen;
    while (true) {
      ws();
      const char c = cur_.peek();
      if (c == '?' || c == '$') {
        std::string v = variable();
        if (seen.insert(v).second) q.projection.push_back(v);
      } else if (c == '(') {
        unsupported("expressions in SELECT");
      } else {
        break;
      }
    }
    if (q.projection.empty()) fail("expected '*' or variables after SELECT");
  }

  void dataset_clause() {
    if (peek_keyword() == "FROM") unsupported("FROM");
  }

  void modifiers(Query& q) {
    std::string kw = peek_keyword();
    if (kw == "GROUP") unsupported("GROUP BY");
    if (kw == "HAVING") unsupported("HAVING");
    if (kw == "ORDER") {
      take_keyword();
      expect_keyword("BY");
      while (true) {
        ws();
        kw = peek_keyword();
        OrderCondition cond;
        if (kw == "ASC" || kw == "DESC") {
          take_keyword();
          cond.descending = kw == "DESC";
          expect('(');
          cond.expr = expression();
          expect(')');
        } else if (cur_.peek() == '?' || cur_.peek() == '$') {
          cond.expr.op = Expr::Op::Variable;
          cond.expr.variable = variable();
        } else if (cur_.peek() == '(') {
          cur_.get();
          cond.expr = expression();
          expect(')');
        } else if (!kw.empty() && kw != "LIMIT" && kw != "OFFSET") {
          cond.expr = primary();
        } else {
          break;
        }
        q.order_by.push_back(std::move(cond));
      }
      if (q.order_by.empty()) fail("expected an ORDER BY condition");
    }
    for (int i = 0; i < 2; ++i) {
      kw = peek_keyword();
      if (kw == "LIMIT" && !q.limit) {
        take_keyword();
        q.limit = integer();
      } else if (kw == "OFFSET" && !q.offset) {
        take_keyword();
        q.offset = integer();
      }
    }
    kw = peek_keyword();
    if (kw == "VALUES") unsupported("VALUES");
  }

  std::size_t integer() {
    ws();
    if (!std::isdigit(static_cast<unsigned char>(cur_.peek()))) fail("expected a non-negative integer");
    std::size_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
      const std::size_t d = static_cast<std::size_t>(cur_.get() - '0');
      if (v > (SIZE_MAX - d) / 10) fail("integer too large");
      v = v * 10 + d;
    }
    return v;
  }

  std::string variable() {
    ws();
    if (cur_.peek() != '?' && cur_.peek() != '$') fail("expected a variable");
    cur_.get();
    std::string name;
    while (is_var_char(cur_.peek())) name += cur_.get();
    if (name.empty()) fail("empty variable name");
    return name;
  }

  GroupPattern group() {
    expect('{');
    GroupPattern g;
    ws();
    if (peek_keyword() == "SELECT") unsupported("subqueries");
    while (true) {
      ws();
      const char c = cur_.peek();
      if (c == '}') {
        cur_.get();
        return g;
      }
      if (cur_.eof()) fail("unterminated group, expected '}'");
      if (c == '{') {
        GroupPattern inner = group();
        if (peek_keyword() == "UNION") unsupported("UNION");
        g.elements.push_back(GroupPattern::Element::nested(GroupPattern::Element::Kind::Group, std::move(inner)));
        accept('.');
        continue;
      }
      const std::string kw = peek_keyword();
      if (kw == "OPTIONAL") {
        take_keyword();
        ws();
        g.elements.push_back(GroupPattern::Element::nested(GroupPattern::Element::Kind::Optional, group()));
        accept('.');
        continue;
      }
      if (kw == "FILTER") {
        take_keyword();
        ws();
        if (peek_keyword() == "NOT" || peek_keyword() == "EXISTS") unsupported("EXISTS");
        if (cur_.peek() == '(') {
          cur_.get();
          g.filters.push_back(expression());
          expect(')');
        } else {
          g.filters.push_back(primary());
        }
        accept('.');
        continue;
      }
      if (kw == "UNION") unsupported("UNION");
      if (kw == "MINUS") unsupported("MINUS");
      if (kw == "GRAPH") unsupported("GRAPH");
      if (kw == "SERVICE") unsupported("SERVICE");
      if (kw == "BIND") unsupported("BIND");
      if (kw == "VALUES") unsupported("VALUES");
      triples_same_subject(g);
      ws();
      if (cur_.peek() == '.') {
        cur_.get();
      } else if (cur_.peek() != '}' && cur_.peek() != '{') {
        const std::string next = peek_keyword();
        if (next != "OPTIONAL" && next != "FILTER" && next != "MINUS" && next != "BIND" && next != "VALUES" &&
            next != "GRAPH" && next != "SERVICE") {
          fail("expected '.' or '}' after triple pattern");
        }
      }
    }
  }

  void triples_same_subject(GroupPattern& g) {
    PatternTerm subject = pattern_term(false);
    while (true) {
      PatternTerm predicate = verb();
      while (true) {
        PatternTerm object = pattern_term(false);
        g.elements.push_back(GroupPattern::Element::of(TriplePattern{subject, predicate, std::move(object)}));
        if (!accept(',')) break;
      }
      if (!accept(';')) return;
      ws();
      // A dangling ';' is allowed before '.', '}' or another ';'.
      while (cur_.peek() == ';') {
        cur_.get();
        ws();
      }
      if (cur_.peek() == '.' || cur_.peek() == '}') return;
    }
  }

  PatternTerm verb() {
    ws();
    if (cur_.peek() == '^' || cur_.peek() == '!' || cur_.peek() == '(') unsupported("property paths");
    PatternTerm p = Var{};
    if (cur_.peek() == 'a' && !is_name_char(cur_.peek(1)) && cur_.peek(1) != ':' && cur_.peek(1) != '.') {
      cur_.get();
      p = rdf::Term(rdf::Iri(std::string(rdf::vocab::kRdfType)));
    } else {
      p = pattern_term(true);
      if (const auto* t = std::get_if<rdf::Term>(&p); t != nullptr && !rdf::is_iri(*t)) {
        fail("predicate must be an IRI or a variable");
      }
    }
    const char c = cur_.peek();
    if (c == '/' || c == '|' || c == '*' || c == '+' || (c == '?' && !is_var_char(cur_.peek(1)))) {
      unsupported("property paths");
    }
    return p;
  }

  PatternTerm pattern_term(bool predicate_position) {
    ws();
    const char c = cur_.peek();
    if (c == '?' || c == '$') return Var{variable()};
    if (c == '_' && cur_.peek(1) == ':') unsupported("blank nodes in query patterns");
    if (c == '[') unsupported("blank nodes in query patterns");
    if (c == '(') unsupported("collections");
    if (predicate_position && (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c)))) {
      fail("predicate must be an IRI or a variable");
    }
    return term();
  }

  rdf::Iri iri() {
    ws();
    if (cur_.peek() == '<') {
      std::string value = guarded([&] { return cur_.read_iriref(); });
      if (!rdf::is_absolute_iri(value)) fail("relative IRI <" + value + "> (BASE is not supported)");
      return rdf::Iri(std::move(value));
    }
    return pname();
  }

  rdf::Iri pname() {
    const auto line = cur_.line();
    const auto col = cur_.column();
    const auto off = cur_.offset();
    std::string prefix;
    if (is_name_start(cur_.peek())) {
      while (is_name_char(cur_.peek()) || (cur_.peek() == '.' && is_name_char(cur_.peek(1)))) prefix += cur_.get();
    }
    if (cur_.peek() != ':') fail("expected an IRI, prefixed name, literal or variable");
    cur_.get();
    std::string local;
    while (is_name_char(cur_.peek()) || cur_.peek() == ':' ||
           (cur_.peek() == '.' && (is_name_char(cur_.peek(1)) || cur_.peek(1) == ':'))) {
      local += cur_.get();
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw SyntaxError("undefined prefix '" + prefix + ":'", line, col, off);
    try {
      return rdf::Iri(it->second + local);
    } catch (const rdf::StructuralError& e) {
      throw SyntaxError(e.what(), line, col, off);
    }
  }

  rdf::Term term() {
    ws();
    const char c = cur_.peek();
    if (c == '<') return iri();
    if (c == '"' || c == '\'') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-' || c == '.') &&
         (std::isdigit(static_cast<unsigned char>(cur_.peek(1))) ||
          (cur_.peek(1) == '.' && std::isdigit(static_cast<unsigned char>(cur_.peek(2))))))) {
      return number();
    }
    const std::string kw = peek_keyword();
    if (kw == "TRUE" || kw == "FALSE") {
      cur_.advance(kw.size());
      return rdf::Literal(kw == "TRUE" ? "true" : "false", rdf::Iri(std::string(rdf::xsd::kBoolean)));
    }
    return pname();
  }

  rdf::Term literal() {
    std::string lex = guarded([&] { return cur_.read_quoted(true); });
    if (cur_.peek() == '@') {
      std::string tag = guarded([&] { return cur_.read_langtag(); });
      return rdf::Literal::with_lang(std::move(lex), std::move(tag));
    }
    if (cur_.peek() == '^' && cur_.peek(1) == '^') {
      cur_.advance(2);
      return rdf::Literal(std::move(lex), iri());
    }
    return rdf::Literal(std::move(lex));
  }

  rdf::Term number() {
    std::string text;
    if (cur_.peek() == '+' || cur_.peek() == '-') text += cur_.get();
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
        text += cur_.get();
        ++n;
      }
      return n;
    };
    std::size_t int_digits = digits();
    bool decimal = false;
    bool dbl = false;
    if (cur_.peek() == '.' && std::isdigit(static_cast<unsigned char>(cur_.peek(1)))) {
      text += cur_.get();
      digits();
      decimal = true;
    } else if (cur_.peek() == '.' && (cur_.peek(1) == 'e' || cur_.peek(1) == 'E') && int_digits > 0) {
      text += cur_.get();
      decimal = true;
    }
    if (cur_.peek() == 'e' || cur_.peek() == 'E') {
      text += cur_.get();
      if (cur_.peek() == '+' || cur_.peek() == '-') text += cur_.get();
      if (digits() == 0) fail("malformed exponent");
      dbl = true;
    }
    if (int_digits == 0 && !decimal) fail("malformed number");
    const std::string_view dt = dbl ? rdf::xsd::kDouble : decimal ? rdf::xsd::kDecimal : rdf::xsd::kInteger;
    return rdf::Literal(std::move(text), rdf::Iri(std::string(dt)));
  }

  // Expression grammar: or := and ('||' and)*, and := rel ('&&' rel)*, rel := unary (cmp unary)?
  Expr expression() {
    Expr left = conjunction();
    while (true) {
      ws();
      if (!cur_.starts_with("||")) return left;
      cur_.advance(2);
      Expr node;
      node.op = Expr::Op::Or;
      node.args.push_back(std::move(left));
      node.args.push_back(conjunction());
      left = std::move(node);
    }
  }

  Expr conjunction() {
    Expr left = relational();
    while (true) {
      ws();
      if (!cur_.starts_with("&&")) return left;
      cur_.advance(2);
      Expr node;
      node.op = Expr::Op::And;
      node.args.push_back(std::move(left));
      node.args.push_back(relational());
      left = std::move(node);
    }
  }

  Expr relational() {
    Expr left = unary();
    ws();
    Expr::Op op;
    if (cur_.starts_with("!=")) {
      op = Expr::Op::NotEqual;
      cur_.advance(2);
    } else if (cur_.starts_with("<=")) {
      op = Expr::Op::LessEqual;
      cur_.advance(2);
    } else if (cur_.starts_with(">=")) {
      op = Expr::Op::GreaterEqual;
      cur_.advance(2);
    } else if (cur_.peek() == '=') {
      op = Expr::Op::Equal;
      cur_.get();
    } else if (cur_.peek() == '<') {
      op = Expr::Op::Less;
      cur_.get();
    } else if (cur_.peek() == '>') {
      op = Expr::Op::Greater;
      cur_.get();
    } else {
      const std::string kw = peek_keyword();
      if (kw == "IN" || kw == "NOT") unsupported("IN");
      return left;
    }
    Expr node;
    node.op = op;
    node.args.push_back(std::move(left));
    node.args.push_back(unary());
    return node;
  }

  Expr unary() {
    ws();
    if (cur_.peek() == '!' && cur_.peek(1) != '=') {
      cur_.get();
      Expr node;
      node.op = Expr::Op::Not;
      node.args.push_back(unary());
      return node;
    }
    if ((cur_.peek() == '-' || cur_.peek() == '+') && !std::isdigit(static_cast<unsigned char>(cur_.peek(1)))) {
      unsupported("arithmetic");
    }
    Expr e = primary();
    ws();
    const char c = cur_.peek();
    if (c == '+' || c == '-' || c == '*' || c == '/') unsupported("arithmetic");
    return e;
  }

  Expr call(Expr::Op op, std::size_t min_args, std::size_t max_args) {
    Expr node;
    node.op = op;
    expect('(');
    ws();
    if (cur_.peek() != ')') {
      while (true) {
        node.args.push_back(expression());
        if (!accept(',')) break;
      }
    }
    expect(')');
    if (node.args.size() < min_args || node.args.size() > max_args) fail("wrong number of arguments");
    return node;
  }

  Expr primary() {
    ws();
    const char c = cur_.peek();
    if (c == '(') {
      cur_.get();
      Expr e = expression();
      expect(')');
      return e;
    }
    if (c == '?' || c == '$') {
      Expr e;
      e.op = Expr::Op::Variable;
      e.variable = variable();
      return e;
    }
    const std::string kw = peek_keyword();
    if (!kw.empty() && kw != "TRUE" && kw != "FALSE") {
      // Builtins are followed by '('; anything else is a prefixed name.
      std::size_t n = kw.size();
      while (cur_.peek(n) == ' ' || cur_.peek(n) == '\t') ++n;
      if (cur_.peek(n) == '(') {
        static const std::set<std::string> aggregates = {"COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE",
                                                         "GROUP_CONCAT"};
        if (kw == "REGEX") return take_keyword(), call(Expr::Op::Regex, 2, 3);
        if (kw == "STR") return take_keyword(), call(Expr::Op::Str, 1, 1);
        if (kw == "LANG") return take_keyword(), call(Expr::Op::Lang, 1, 1);
        if (kw == "DATATYPE") return take_keyword(), call(Expr::Op::Datatype, 1, 1);
        if (kw == "BOUND") {
          take_keyword();
          expect('(');
          Expr node;
          node.op = Expr::Op::Bound;
          Expr v;
          v.op = Expr::Op::Variable;
          v.variable = variable();
          node.args.push_back(std::move(v));
          expect(')');
          return node;
        }
        if (aggregates.contains(kw)) unsupported("aggregates");
        if (kw == "EXISTS") unsupported("EXISTS");
        unsupported("function " + kw);
      }
      if (kw == "EXISTS" || kw == "NOT") unsupported("EXISTS");
    }
    Expr e;
    e.op = Expr::Op::Constant;
    e.constant = term();
    ws();
    if (cur_.peek() == '(') unsupported("function calls");
    return e;
  }

  Cursor cur_;
  std::map<std::string, std::string> prefixes_;
};

void collect(const GroupPattern& g, std::vector<std::string>& out, std::set<std::string>& seen) {
  auto add = [&](const PatternTerm& t) {
    if (const auto* v = std::get_if<Var>(&t); v != nullptr && seen.insert(v->name).second) out.push_back(v->name);
  };
  for (const auto& el : g.elements) {
    if (el.triple) {
      add(el.triple->subject);
      add(el.triple->predicate);
      add(el.triple->object);
    } else {
      collect(el.group.front(), out, seen);
    }
  }
}

}  // namespace

std::vector<std::string> pattern_variables(const GroupPattern& g) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect(g, out, seen);
  return out;
}

Query parse_query(std::string_view text) { return Parser(text).parse(); }

}  // namespace legalkg::sparql
