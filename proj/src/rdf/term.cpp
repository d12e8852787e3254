#include "legalkg/rdf/term.hpp"

#include <cctype>
#include <cstdio>

namespace legalkg::rdf {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

bool is_absolute_iri(std::string_view text) noexcept {
  if (text.empty() || !is_alpha(text.front())) return false;
  std::size_t colon = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ':') {
      colon = i;
      break;
    }
    if (!is_alnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  if (colon == std::string_view::npos) return false;
  for (const char c : text) {
    if (c == '<' || c == '>' || std::isspace(static_cast<unsigned char>(c)) ||
        static_cast<unsigned char>(c) < 0x20) {
      return false;
    }
  }
  return true;
}

bool is_valid_blank_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  for (const char c : label) {
    if (!is_alnum(c) && c != '_') return false;
  }
  return true;
}

bool is_valid_langtag(std::string_view tag) noexcept {
  // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t run = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i, ++run;
  if (run == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    run = 0;
    while (i < tag.size() && is_alnum(tag[i])) ++i, ++run;
    if (run == 0) return false;
  }
  return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw StructuralError("iri", "empty IRI");
  if (!is_absolute_iri(value_)) throw StructuralError("iri", "not an absolute IRI: '" + value_ + "'");
}

BlankNode::BlankNode(std::string label) : label_(std::move(label)) {
  if (!is_valid_blank_label(label_)) {
    throw StructuralError("blank node", "invalid label '" + label_ + "'");
  }
}

Literal::Literal(std::string lexical)
    : Literal(std::move(lexical), Iri(std::string(xsd::kString)), std::nullopt) {}

Literal::Literal(std::string lexical, Iri datatype)
    : Literal(std::move(lexical), std::move(datatype), std::nullopt) {}

Literal Literal::with_lang(std::string lexical, std::string langtag) {
  return Literal(std::move(lexical), Iri(std::string(vocab::kLangString)), std::move(langtag));
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> langtag)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), langtag_(std::move(langtag)) {
  const bool is_lang_string = datatype_.value() == vocab::kLangString;
  if (langtag_) {
    if (!is_valid_langtag(*langtag_)) {
      throw StructuralError("literal", "invalid language tag '" + *langtag_ + "'");
    }
  } else if (is_lang_string) {
    throw StructuralError("literal", "rdf:langString literal without a language tag");
  }
}

Triple::Triple(Term s, Iri p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (is_literal(subject)) throw StructuralError("subject", "literal in subject position");
}

std::string escape_string(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (const char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_ntriples(const Term& t) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Iri>) {
          return "<" + v.value() + ">";
        } else if constexpr (std::is_same_v<T, BlankNode>) {
          return "_:" + v.label();
        } else {
          std::string out = "\"" + escape_string(v.lexical()) + "\"";
          if (v.langtag()) {
            out += "@" + *v.langtag();
          } else if (!v.is_plain_string()) {
            out += "^^<" + v.datatype().value() + ">";
          }
          return out;
        }
      },
      t);
}

std::size_t hash_term(const Term& t) noexcept {
  const std::hash<std::string> h;
  return std::visit(
      [&](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Iri>) {
          return h(v.value());
        } else if constexpr (std::is_same_v<T, BlankNode>) {
          return h(v.label()) * 31 + 1;
        } else {
          std::size_t seed = h(v.lexical());
          seed ^= h(v.datatype().value()) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
          if (v.langtag()) seed ^= h(*v.langtag()) + 0x9e3779b97f4a7c15ULL + (seed << 6);
          return seed * 31 + 2;
        }
      },
      t);
}

}  // namespace legalkg::rdf
