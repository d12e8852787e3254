#include "legalkg/sparql/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <set>

#include "legalkg/sparql/parser.hpp"

namespace legalkg::sparql {

using rdf::Iri;
using rdf::Literal;
using rdf::Term;

namespace {

using Value = std::optional<Term>;  // nullopt = expression error

bool is_numeric_datatype(std::string_view dt) {
  return dt == rdf::xsd::kInteger || dt == rdf::xsd::kDecimal || dt == rdf::xsd::kDouble ||
         dt == "http://www.w3.org/2001/XMLSchema#float" || dt == "http://www.w3.org/2001/XMLSchema#int" ||
         dt == "http://www.w3.org/2001/XMLSchema#long" || dt == "http://www.w3.org/2001/XMLSchema#short" ||
         dt == "http://www.w3.org/2001/XMLSchema#nonNegativeInteger" ||
         dt == "http://www.w3.org/2001/XMLSchema#positiveInteger";
}

Term boolean(bool b) { return Literal(b ? "true" : "false", Iri(std::string(rdf::xsd::kBoolean))); }

// Effective boolean value; nullopt on type error.
std::optional<bool> ebv(const Value& v) {
  if (!v) return std::nullopt;
  const auto* lit = std::get_if<Literal>(&*v);
  if (lit == nullptr) return std::nullopt;
  const auto& dt = lit->datatype().value();
  if (dt == rdf::xsd::kBoolean) {
    if (lit->lexical() == "true" || lit->lexical() == "1") return true;
    if (lit->lexical() == "false" || lit->lexical() == "0") return false;
    return false;
  }
  if (is_numeric_datatype(dt)) {
    auto n = numeric_value(*v);
    if (!n) return false;
    return *n != 0 && !std::isnan(static_cast<double>(*n));
  }
  if (lit->is_plain_string() || lit->langtag()) return !lit->lexical().empty();
  return std::nullopt;
}

std::optional<int> compare_values(const Term& a, const Term& b) {
  auto na = numeric_value(a);
  auto nb = numeric_value(b);
  if (na && nb) {
    if (std::isnan(static_cast<double>(*na)) || std::isnan(static_cast<double>(*nb))) return std::nullopt;
    return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  }
  const auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

class Evaluator {
 public:
  Evaluator(const rdf::Graph& g, const EvalOptions& opts) : g_(g), opts_(opts) {}

  std::vector<Solution> eval_group(const GroupPattern& group) {
    std::vector<Solution> omega{Solution{}};
    std::vector<const TriplePattern*> run;
    auto flush = [&] {
      if (run.empty()) return;
      omega = eval_bgp(omega, run);
      run.clear();
    };
    for (const auto& el : group.elements) {
      using Kind = GroupPattern::Element::Kind;
      if (el.kind == Kind::Triple) {
        run.push_back(&*el.triple);
      } else if (el.kind == Kind::Group) {
        flush();
        omega = join(omega, eval_group(el.group.front()));
      } else {
        flush();
        omega = left_join(omega, el.group.front());
      }
    }
    flush();
    return apply_filters(std::move(omega), group.filters);
  }

  Value eval_expr(const Expr& e, const Solution& mu) {
    switch (e.op) {
      case Expr::Op::Constant:
        return e.constant;
      case Expr::Op::Variable: {
        auto it = mu.find(e.variable);
        if (it == mu.end()) return std::nullopt;
        return it->second;
      }
      case Expr::Op::Bound:
        return boolean(mu.contains(e.args[0].variable));
      case Expr::Op::Not: {
        auto b = ebv(eval_expr(e.args[0], mu));
        if (!b) return std::nullopt;
        return boolean(!*b);
      }
      case Expr::Op::And: {
        auto l = ebv(eval_expr(e.args[0], mu));
        auto r = ebv(eval_expr(e.args[1], mu));
        if ((l && !*l) || (r && !*r)) return boolean(false);
        if (l && r) return boolean(true);
        return std::nullopt;
      }
      case Expr::Op::Or: {
        auto l = ebv(eval_expr(e.args[0], mu));
        auto r = ebv(eval_expr(e.args[1], mu));
        if ((l && *l) || (r && *r)) return boolean(true);
        if (l && r) return boolean(false);
        return std::nullopt;
      }
      case Expr::Op::Equal:
      case Expr::Op::NotEqual: {
        auto l = eval_expr(e.args[0], mu);
        auto r = eval_expr(e.args[1], mu);
        if (!l || !r) return std::nullopt;
        bool eq;
        auto nl = numeric_value(*l);
        auto nr = numeric_value(*r);
        if (nl && nr) {
          eq = *nl == *nr;
        } else {
          eq = *l == *r;
        }
        return boolean(e.op == Expr::Op::Equal ? eq : !eq);
      }
      case Expr::Op::Less:
      case Expr::Op::Greater:
      case Expr::Op::LessEqual:
      case Expr::Op::GreaterEqual: {
        auto l = eval_expr(e.args[0], mu);
        auto r = eval_expr(e.args[1], mu);
        if (!l || !r) return std::nullopt;
        auto c = compare_values(*l, *r);
        if (!c) return std::nullopt;
        switch (e.op) {
          case Expr::Op::Less: return boolean(*c < 0);
          case Expr::Op::Greater: return boolean(*c > 0);
          case Expr::Op::LessEqual: return boolean(*c <= 0);
          default: return boolean(*c >= 0);
        }
      }
      case Expr::Op::Str: {
        auto v = eval_expr(e.args[0], mu);
        if (!v) return std::nullopt;
        if (const auto* iri = std::get_if<Iri>(&*v)) return Literal(iri->value());
        if (const auto* lit = std::get_if<Literal>(&*v)) return Literal(lit->lexical());
        return std::nullopt;
      }
      case Expr::Op::Lang: {
        auto v = eval_expr(e.args[0], mu);
        if (!v) return std::nullopt;
        const auto* lit = std::get_if<Literal>(&*v);
        if (lit == nullptr) return std::nullopt;
        return Literal(lit->langtag().value_or(""));
      }
      case Expr::Op::Datatype: {
        auto v = eval_expr(e.args[0], mu);
        if (!v) return std::nullopt;
        const auto* lit = std::get_if<Literal>(&*v);
        if (lit == nullptr) return std::nullopt;
        return lit->datatype();
      }
      case Expr::Op::Regex:
        return eval_regex(e, mu);
    }
    return std::nullopt;
  }

  void check_deadline() {
    if (!opts_.deadline) return;
    if (++ticks_ % 1024 == 0 && std::chrono::steady_clock::now() > *opts_.deadline) throw TimeoutError();
  }

 private:
  // Nested-loop join; at each step the pattern with the fewest unbound positions goes next.
  std::vector<Solution> eval_bgp(const std::vector<Solution>& input, std::vector<const TriplePattern*> patterns) {
    std::vector<Solution> out;
    for (const auto& mu : input) extend(mu, patterns, out);
    return out;
  }

  static bool bound_in(const PatternTerm& t, const Solution& mu) {
    const auto* v = std::get_if<Var>(&t);
    return v == nullptr || mu.contains(v->name);
  }

  static std::optional<Term> resolve(const PatternTerm& t, const Solution& mu) {
    if (const auto* term = std::get_if<Term>(&t)) return *term;
    auto it = mu.find(std::get<Var>(t).name);
    if (it == mu.end()) return std::nullopt;
    return it->second;
  }

  static bool bind(Solution& mu, const PatternTerm& t, const Term& value) {
    const auto* v = std::get_if<Var>(&t);
    if (v == nullptr) return true;
    auto [it, inserted] = mu.emplace(v->name, value);
    return inserted || it->second == value;
  }

  void extend(const Solution& mu, std::vector<const TriplePattern*> remaining, std::vector<Solution>& out) {
    check_deadline();
    if (remaining.empty()) {
      out.push_back(mu);
      return;
    }
    auto unbound = [&](const TriplePattern* tp) {
      return !bound_in(tp->subject, mu) + !bound_in(tp->predicate, mu) + !bound_in(tp->object, mu);
    };
    auto best = std::min_element(remaining.begin(), remaining.end(),
                                 [&](auto* a, auto* b) { return unbound(a) < unbound(b); });
    const TriplePattern* tp = *best;
    remaining.erase(best);

    const auto s = resolve(tp->subject, mu);
    const auto p = resolve(tp->predicate, mu);
    const auto o = resolve(tp->object, mu);
    if (s && rdf::is_literal(*s)) return;
    if (p && !rdf::is_iri(*p)) return;
    const Iri* pred = p ? &std::get<Iri>(*p) : nullptr;
    g_.match(s ? &*s : nullptr, pred, o ? &*o : nullptr, [&](const rdf::Triple& t) {
      Solution next = mu;
      if (!bind(next, tp->subject, t.subject)) return;
      if (!bind(next, tp->predicate, Term(t.predicate))) return;
      if (!bind(next, tp->object, t.object)) return;
      extend(next, remaining, out);
    });
  }

  static std::optional<Solution> merge(const Solution& a, const Solution& b) {
    Solution out = a;
    for (const auto& [k, v] : b) {
      auto [it, inserted] = out.emplace(k, v);
      if (!inserted && it->second != v) return std::nullopt;
    }
    return out;
  }

  std::vector<Solution> join(const std::vector<Solution>& left, const std::vector<Solution>& right) {
    std::vector<Solution> out;
    for (const auto& l : left) {
      for (const auto& r : right) {
        check_deadline();
        if (auto m = merge(l, r)) out.push_back(std::move(*m));
      }
    }
    return out;
  }

  std::vector<Solution> left_join(const std::vector<Solution>& left, const GroupPattern& inner) {
    GroupPattern body = inner;
    body.filters.clear();
    const auto right = eval_group(body);
    std::vector<Solution> out;
    for (const auto& l : left) {
      bool matched = false;
      for (const auto& r : right) {
        check_deadline();
        auto m = merge(l, r);
        if (!m || !passes(inner.filters, *m)) continue;
        out.push_back(std::move(*m));
        matched = true;
      }
      if (!matched) out.push_back(l);
    }
    return out;
  }

  bool passes(const std::vector<Expr>& filters, const Solution& mu) {
    for (const auto& f : filters) {
      auto b = ebv(eval_expr(f, mu));
      if (!b || !*b) return false;
    }
    return true;
  }

  std::vector<Solution> apply_filters(std::vector<Solution> omega, const std::vector<Expr>& filters) {
    if (filters.empty()) return omega;
    std::vector<Solution> out;
    for (auto& mu : omega) {
      check_deadline();
      if (passes(filters, mu)) out.push_back(std::move(mu));
    }
    return out;
  }

  Value eval_regex(const Expr& e, const Solution& mu) {
    auto text = eval_expr(e.args[0], mu);
    auto pattern = eval_expr(e.args[1], mu);
    if (!text || !pattern) return std::nullopt;
    const auto* t = std::get_if<Literal>(&*text);
    const auto* p = std::get_if<Literal>(&*pattern);
    if (t == nullptr || p == nullptr || !(t->is_plain_string() || t->langtag()) || !p->is_plain_string()) {
      return std::nullopt;
    }
    std::string flags;
    if (e.args.size() == 3) {
      auto f = eval_expr(e.args[2], mu);
      const auto* fl = f ? std::get_if<Literal>(&*f) : nullptr;
      if (fl == nullptr || !fl->is_plain_string()) return std::nullopt;
      flags = fl->lexical();
    }
    auto syntax = std::regex::ECMAScript;
    for (const char c : flags) {
      if (c == 'i') {
        syntax |= std::regex::icase;
      } else {
        return std::nullopt;
      }
    }
    const std::string key = flags + '\x1f' + p->lexical();
    auto it = regex_cache_.find(key);
    if (it == regex_cache_.end()) {
      std::optional<std::regex> compiled;
      try {
        compiled.emplace(p->lexical(), syntax);
      } catch (const std::regex_error&) {
      }
      it = regex_cache_.emplace(key, std::move(compiled)).first;
    }
    if (!it->second) return std::nullopt;
    return boolean(std::regex_search(t->lexical(), *it->second));
  }

  const rdf::Graph& g_;
  const EvalOptions& opts_;
  std::size_t ticks_ = 0;
  std::map<std::string, std::optional<std::regex>> regex_cache_;
};

}  // namespace

std::optional<long double> numeric_value(const Term& t) {
  const auto* lit = std::get_if<Literal>(&t);
  if (lit == nullptr || !is_numeric_datatype(lit->datatype().value())) return std::nullopt;
  const std::string& s = lit->lexical();
  if (s.empty()) return std::nullopt;
  const bool integral = lit->datatype().value() != rdf::xsd::kDecimal && lit->datatype().value() != rdf::xsd::kDouble &&
                        lit->datatype().value() != "http://www.w3.org/2001/XMLSchema#float";
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (integral) {
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    }
  } else if (s == "INF" || s == "-INF" || s == "+INF" || s == "NaN") {
    if (lit->datatype().value() == rdf::xsd::kDecimal) return std::nullopt;
  } else {
    bool digits = false;
    bool dot = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
    }
    if (!digits) return std::nullopt;
    if (i < s.size()) {
      if (lit->datatype().value() == rdf::xsd::kDecimal || (s[i] != 'e' && s[i] != 'E')) return std::nullopt;
      ++i;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
      if (i == s.size()) return std::nullopt;
      for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      }
    }
  }
  try {
    return std::stold(s[0] == '+' ? s.substr(1) : s);
  } catch (const std::out_of_range&) {
    return s[0] == '-' ? -HUGE_VALL : HUGE_VALL;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

int compare_for_order(const std::optional<Term>& a, const std::optional<Term>& b) {
  auto rank = [](const std::optional<Term>& t) {
    if (!t) return 0;
    if (rdf::is_iri(*t)) return 1;
    if (rdf::is_blank(*t)) return 2;
    return numeric_value(*t) ? 3 : 4;
  };
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) return 0;
  if (ra == 3) {
    const auto na = *numeric_value(*a);
    const auto nb = *numeric_value(*b);
    const bool nan_a = std::isnan(static_cast<double>(na));
    const bool nan_b = std::isnan(static_cast<double>(nb));
    if (nan_a != nan_b) return nan_a ? -1 : 1;
    if (!nan_a && na != nb) return na < nb ? -1 : 1;
  }
  const auto c = *a <=> *b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

ResultSet evaluate(const Query& q, const rdf::Graph& g, const EvalOptions& opts) {
  Evaluator ev(g, opts);
  auto omega = ev.eval_group(q.where);

  ResultSet rs;
  if (q.form == Query::Form::Ask) {
    rs.kind = ResultSet::Kind::Boolean;
    rs.boolean = !omega.empty();
    return rs;
  }

  if (!q.order_by.empty()) {
    std::vector<std::pair<std::vector<std::optional<Term>>, std::size_t>> keys;
    keys.reserve(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
      std::vector<std::optional<Term>> k;
      for (const auto& cond : q.order_by) k.push_back(ev.eval_expr(cond.expr, omega[i]));
      keys.emplace_back(std::move(k), i);
    }
    std::stable_sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
      for (std::size_t c = 0; c < q.order_by.size(); ++c) {
        int r = compare_for_order(x.first[c], y.first[c]);
        if (q.order_by[c].descending) r = -r;
        if (r != 0) return r < 0;
      }
      return false;
    });
    std::vector<Solution> sorted;
    sorted.reserve(omega.size());
    for (const auto& k : keys) sorted.push_back(std::move(omega[k.second]));
    omega = std::move(sorted);
  }

  rs.kind = ResultSet::Kind::Bindings;
  rs.vars = q.projection;
  const std::set<std::string> keep(rs.vars.begin(), rs.vars.end());
  std::set<Solution> seen;
  std::size_t skipped = 0;
  const std::size_t offset = q.offset.value_or(0);
  for (auto& mu : omega) {
    if (q.limit && rs.solutions.size() >= *q.limit) break;
    ev.check_deadline();
    Solution projected;
    for (auto& [k, v] : mu) {
      if (keep.contains(k)) projected.emplace(k, std::move(v));
    }
    if (q.distinct && !seen.insert(projected).second) continue;
    if (skipped < offset) {
      ++skipped;
      continue;
    }
    rs.solutions.push_back(std::move(projected));
  }
  return rs;
}

ResultSet run_query(std::string_view text, const rdf::Graph& g, const EvalOptions& opts) {
  return evaluate(parse_query(text), g, opts);
}

}  // namespace legalkg::sparql
