#include "legalkg/rdf/turtle.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "cursor.hpp"
#include "legalkg/io_error.hpp"

namespace legalkg::rdf {

namespace {

using detail::Cursor;

bool is_pn_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_local_punct(char c) {
  switch (c) {
    case '_': case '~': case '.': case '-': case '!': case '$': case '&': case '\'':
    case '(': case ')': case '*': case '+': case ',': case ';': case '=': case '/':
    case '?': case '#': case '@': case '%':
      return true;
    default:
      return false;
  }
}

class TurtleReader {
 public:
  explicit TurtleReader(std::string_view text) : in_(text) {}

  Graph run() {
    while (true) {
      in_.skip_ws();
      if (in_.eof()) break;
      if (in_.starts_with("@prefix")) {
        in_.advance(7);
        prefix_directive(true);
      } else if (in_.starts_with_nocase("PREFIX") && !is_pn_char(in_.peek(6)) && in_.peek(6) != ':') {
        in_.advance(6);
        prefix_directive(false);
      } else if (in_.starts_with("@base") || (in_.starts_with_nocase("BASE") && !is_pn_char(in_.peek(4)))) {
        in_.fail("base directives are not supported");
      } else {
        statement();
      }
    }
    return std::move(graph_);
  }

 private:
  void prefix_directive(bool at_form) {
    in_.skip_ws();
    std::string name;
    while (!in_.eof() && (is_pn_char(in_.peek()) || (in_.peek() == '.' && is_pn_char(in_.peek(1))))) {
      name += in_.get();
    }
    if (!name.empty() && name.back() == '.') in_.fail("prefix name may not end with '.'");
    in_.expect(':', "':' after prefix name");
    in_.skip_ws();
    std::string ns = in_.read_iriref();
    if (!is_absolute_iri(ns)) in_.fail("prefix namespace is not an absolute IRI");
    graph_.bind_prefix(name, std::move(ns));
    if (at_form) {
      in_.skip_ws();
      in_.expect('.', "'.' after @prefix directive");
    }
  }

  void statement() {
    Term subject = read_subject();
    in_.skip_ws();
    predicate_object_list(subject);
    in_.skip_ws();
    in_.expect('.', "'.' at end of statement");
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      in_.skip_ws();
      Iri predicate = read_predicate();
      while (true) {
        in_.skip_ws();
        const std::size_t line = in_.line(), col = in_.column();
        Term object = read_object();
        try {
          graph_.insert(Triple(subject, predicate, std::move(object)));
        } catch (const StructuralError& e) {
          throw SyntaxError(e.what(), line, col);
        }
        in_.skip_ws();
        if (in_.peek() != ',') break;
        in_.get();
      }
      if (in_.peek() != ';') break;
      // Repeated or trailing semicolons are permitted.
      while (in_.peek() == ';') {
        in_.get();
        in_.skip_ws();
      }
      if (in_.peek() == '.' || in_.eof()) break;
    }
  }

  Term read_subject() {
    const char c = in_.peek();
    if (c == '<') return make_iri(in_.read_iriref());
    if (c == '_' && in_.peek(1) == ':') return make_blank(in_.read_blank_label());
    if (c == '[') in_.fail("anonymous blank nodes are not supported");
    if (c == '(') in_.fail("collections are not supported");
    if (c == '"' || c == '\'') in_.fail("literal in subject position");
    return read_pname();
  }

  Iri read_predicate() {
    if (in_.peek() == 'a' && !is_pn_char(in_.peek(1)) && in_.peek(1) != ':' && in_.peek(1) != '.') {
      in_.get();
      return Iri(std::string(vocab::kRdfType));
    }
    if (in_.eof() || in_.peek() == '.') in_.fail("expected predicate");
    if (in_.peek() == '<') return make_iri(in_.read_iriref());
    if (in_.peek() == '_' && in_.peek(1) == ':') in_.fail("blank node in predicate position");
    if (in_.peek() == '"' || in_.peek() == '\'') in_.fail("literal in predicate position");
    return read_pname();
  }

  Term read_object() {
    const char c = in_.peek();
    if (in_.eof() || c == '.' || c == ';' || c == ',') in_.fail("expected object");
    if (c == '<') return make_iri(in_.read_iriref());
    if (c == '_' && in_.peek(1) == ':') return make_blank(in_.read_blank_label());
    if (c == '"' || c == '\'') return read_literal();
    if (c == '[') in_.fail("anonymous blank nodes are not supported");
    if (c == '(') in_.fail("collections are not supported");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1))))) {
      return read_number();
    }
    for (std::string_view kw : {"true", "false"}) {
      if (in_.starts_with(kw) && !is_pn_char(in_.peek(kw.size())) && in_.peek(kw.size()) != ':') {
        in_.advance(kw.size());
        return Literal(std::string(kw), Iri(std::string(xsd::kBoolean)));
      }
    }
    return read_pname();
  }

  Literal read_literal() {
    const std::size_t line = in_.line(), col = in_.column();
    std::string lexical = in_.read_quoted(true);
    try {
      if (in_.peek() == '@') return Literal::with_lang(std::move(lexical), in_.read_langtag());
      if (in_.starts_with("^^")) {
        in_.advance(2);
        Iri dt = in_.peek() == '<' ? make_iri(in_.read_iriref()) : read_pname();
        return Literal(std::move(lexical), std::move(dt));
      }
      return Literal(std::move(lexical));
    } catch (const StructuralError& e) {
      throw SyntaxError(e.what(), line, col);
    }
  }

  Literal read_number() {
    std::string text;
    if (in_.peek() == '+' || in_.peek() == '-') text += in_.get();
    bool digits = false, dot = false, exponent = false;
    while (std::isdigit(static_cast<unsigned char>(in_.peek()))) text += in_.get(), digits = true;
    if (in_.peek() == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1)))) {
      dot = true;
      text += in_.get();
      while (std::isdigit(static_cast<unsigned char>(in_.peek()))) text += in_.get(), digits = true;
    }
    if (digits && (in_.peek() == 'e' || in_.peek() == 'E')) {
      exponent = true;
      text += in_.get();
      if (in_.peek() == '+' || in_.peek() == '-') text += in_.get();
      if (!std::isdigit(static_cast<unsigned char>(in_.peek()))) in_.fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(in_.peek()))) text += in_.get();
    }
    if (!digits) in_.fail("malformed numeric literal");
    std::string_view dt = exponent ? xsd::kDouble : dot ? xsd::kDecimal : xsd::kInteger;
    return Literal(std::move(text), Iri(std::string(dt)));
  }

  Iri read_pname() {
    const std::size_t line = in_.line(), col = in_.column();
    std::string prefix;
    while (!in_.eof() && (is_pn_char(in_.peek()) || (in_.peek() == '.' && is_pn_char(in_.peek(1))))) {
      prefix += in_.get();
    }
    if (in_.peek() != ':') {
      if (prefix.empty()) in_.fail("unexpected character '" + std::string(1, in_.peek()) + "'");
      in_.fail("expected ':' in prefixed name '" + prefix + "'");
    }
    if (!prefix.empty() && prefix.back() == '.') in_.fail("prefix name may not end with '.'");
    in_.get();
    std::string local;
    while (!in_.eof()) {
      const char c = in_.peek();
      if (is_pn_char(c) || c == ':') {
        local += in_.get();
      } else if (c == '.' && (is_pn_char(in_.peek(1)) || in_.peek(1) == ':')) {
        // A '.' belongs to the name only when more name characters follow.
        local += in_.get();
      } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(in_.peek(1))) &&
                 std::isxdigit(static_cast<unsigned char>(in_.peek(2)))) {
        local += in_.get();
        local += in_.get();
        local += in_.get();
      } else if (c == '\\' && is_local_punct(in_.peek(1))) {
        in_.get();
        local += in_.get();
      } else {
        break;
      }
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) throw UndefinedPrefixError(prefix, line, col);
    return make_iri(it->second + local, line, col);
  }

  Iri make_iri(std::string value) { return make_iri(std::move(value), in_.line(), in_.column()); }
  Iri make_iri(std::string value, std::size_t line, std::size_t col) {
    try {
      return Iri(std::move(value));
    } catch (const StructuralError& e) {
      throw SyntaxError(e.what(), line, col);
    }
  }

  BlankNode make_blank(std::string label) { return BlankNode(std::move(label)); }

  Cursor in_;
  Graph graph_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleReader(text).run(); }

}  // namespace legalkg::rdf

namespace legalkg::rdf {

namespace {

bool is_simple_local(std::string_view local) {
  if (local.empty()) return true;
  for (const char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return local.front() != '-';
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const Graph& g) : g_(g) {}

  std::string run() {
    std::string out;
    for (const auto& [prefix, ns] : g_.prefixes()) {
      out += "@prefix " + prefix + ": <" + ns + "> .\n";
    }
    const Term* current_subject = nullptr;
    const Iri* current_predicate = nullptr;
    for (const auto& t : g_) {
      if (current_subject == nullptr || t.subject != *current_subject) {
        if (current_subject != nullptr) out += " .\n";
        if (!out.empty()) out += '\n';
        out += term(t.subject) + ' ' + predicate(t.predicate) + ' ' + term(t.object);
      } else if (t.predicate != *current_predicate) {
        out += " ;\n    " + predicate(t.predicate) + ' ' + term(t.object);
      } else {
        out += ", " + term(t.object);
      }
      current_subject = &t.subject;
      current_predicate = &t.predicate;
    }
    if (current_subject != nullptr) out += " .\n";
    return out;
  }

 private:
  std::string predicate(const Iri& p) const {
    if (p.value() == vocab::kRdfType) return "a";
    return iri(p);
  }

  std::string iri(const Iri& i) const {
    // Longest matching namespace wins.
    const std::string* best_prefix = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : g_.prefixes()) {
      if (ns.size() >= best_len && i.value().starts_with(ns) &&
          is_simple_local(std::string_view(i.value()).substr(ns.size()))) {
        if (best_prefix == nullptr || ns.size() > best_len) {
          best_prefix = &prefix;
          best_len = ns.size();
        }
      }
    }
    if (best_prefix != nullptr) return *best_prefix + ":" + i.value().substr(best_len);
    return "<" + i.value() + ">";
  }

  std::string term(const Term& t) const {
    if (const auto* i = std::get_if<Iri>(&t)) return iri(*i);
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label();
    const auto& l = std::get<Literal>(t);
    std::string out = "\"" + escape_string(l.lexical()) + "\"";
    if (l.langtag()) {
      out += "@" + *l.langtag();
    } else if (!l.is_plain_string()) {
      out += "^^" + iri(l.datatype());
    }
    return out;
  }

  const Graph& g_;
};

}  // namespace

std::string serialize_turtle(const Graph& g) { return TurtleWriter(g).run(); }

Graph parse_ntriples(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    detail::Cursor in(line);
    auto fail = [&](const std::string& msg) -> void {
      throw SyntaxError(msg, line_no, in.column());
    };
    try {
      in.skip_ws(false);
      if (in.eof() || in.peek() == '#') continue;

      std::optional<Term> subject;
      if (in.peek() == '<') {
        subject = Iri(in.read_iriref());
      } else if (in.peek() == '_') {
        subject = BlankNode(in.read_blank_label());
      } else {
        fail("expected IRI or blank node as subject");
      }
      in.skip_ws(false);
      if (in.peek() != '<') fail("expected IRI as predicate");
      Iri predicate(in.read_iriref());
      in.skip_ws(false);

      std::optional<Term> object;
      if (in.peek() == '<') {
        object = Iri(in.read_iriref());
      } else if (in.peek() == '_') {
        object = BlankNode(in.read_blank_label());
      } else if (in.peek() == '"') {
        std::string lexical = in.read_quoted(false);
        if (in.peek() == '@') {
          object = Literal::with_lang(std::move(lexical), in.read_langtag());
        } else if (in.starts_with("^^")) {
          in.advance(2);
          object = Literal(std::move(lexical), Iri(in.read_iriref()));
        } else {
          object = Literal(std::move(lexical));
        }
      } else {
        fail("expected object");
      }
      in.skip_ws(false);
      if (in.peek() != '.') fail("expected '.' at end of triple");
      in.get();
      in.skip_ws(false);
      if (!in.eof() && in.peek() != '#') fail("unexpected content after '.'");
      g.insert(Triple(std::move(*subject), std::move(predicate), std::move(*object)));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.detail(), line_no, e.column());
    } catch (const StructuralError& e) {
      throw SyntaxError(e.what(), line_no, in.column());
    }
    if (end == text.size()) break;
  }
  return g;
}

std::string serialize_ntriples(const Graph& g) {
  std::string out;
  for (const auto& t : g) {
    out += to_ntriples(t.subject);
    out += ' ';
    out += to_ntriples(t.predicate);
    out += ' ';
    out += to_ntriples(t.object);
    out += " .\n";
  }
  return out;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read graph file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return path.extension() == ".nt" ? parse_ntriples(ss.str()) : parse_turtle(ss.str());
}

}  // namespace legalkg::rdf
