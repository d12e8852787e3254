#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace legalkg::rdf {

// Raised when a term or triple violates the RDF data-model invariants.
class StructuralError : public std::invalid_argument {
 public:
  StructuralError(std::string component, const std::string& message)
      : std::invalid_argument(component + ": " + message),
        component_(std::move(component)) {}

  const std::string& component() const noexcept { return component_; }

 private:
  std::string component_;
};

namespace xsd {
inline constexpr std::string_view kNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kDate = "http://www.w3.org/2001/XMLSchema#date";
inline constexpr std::string_view kAnyUri = "http://www.w3.org/2001/XMLSchema#anyURI";
}  // namespace xsd

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace vocab

class Iri {
 public:
  // Throws StructuralError unless `value` is an absolute IRI.
  explicit Iri(std::string value);

  const std::string& value() const noexcept { return value_; }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::strong_ordering operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

bool is_absolute_iri(std::string_view text) noexcept;

class BlankNode {
 public:
  explicit BlankNode(std::string label);

  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const BlankNode&, const BlankNode&) = default;
  friend std::strong_ordering operator<=>(const BlankNode&, const BlankNode&) = default;

 private:
  std::string label_;
};

bool is_valid_blank_label(std::string_view label) noexcept;

class Literal {
 public:
  // Plain string literal (xsd:string).
  explicit Literal(std::string lexical);
  Literal(std::string lexical, Iri datatype);
  // Language-tagged literal; datatype is rdf:langString.
  static Literal with_lang(std::string lexical, std::string langtag);

  const std::string& lexical() const noexcept { return lexical_; }
  const Iri& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& langtag() const noexcept { return langtag_; }

  bool is_plain_string() const noexcept { return datatype_.value() == xsd::kString; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal&, const Literal&) = default;

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> langtag);

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> langtag_;
};

bool is_valid_langtag(std::string_view tag) noexcept;

// Variant alternative order encodes the term ordering: IRIs < blank nodes < literals.
using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) noexcept { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) noexcept { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) noexcept { return std::holds_alternative<Literal>(t); }

struct Triple {
  Term subject;
  Iri predicate;
  Term object;

  // Throws StructuralError naming the offending component.
  Triple(Term s, Iri p, Term o);

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

// Escapes a literal's lexical form for a double-quoted N-Triples/Turtle string.
std::string escape_string(std::string_view text);

// N-Triples rendering of a single term; also used for diagnostics.
std::string to_ntriples(const Term& t);

std::size_t hash_term(const Term& t) noexcept;

}  // namespace legalkg::rdf

template <>
struct std::hash<legalkg::rdf::Term> {
  std::size_t operator()(const legalkg::rdf::Term& t) const noexcept {
    return legalkg::rdf::hash_term(t);
  }
};
