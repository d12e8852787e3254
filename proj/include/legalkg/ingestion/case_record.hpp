#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "legalkg/identifiers/ecli.hpp"
#include "legalkg/identifiers/importance.hpp"
#include "legalkg/rdf/term.hpp"

namespace legalkg::ingestion {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingFieldError : public IngestError {
 public:
  explicit MissingFieldError(std::string field)
      : IngestError("missing mandatory field '" + field + "'"), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// JSON record violating the interchange schema; pointer is an RFC 6901 JSON pointer.
class SchemaError : public IngestError {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : IngestError(pointer + ": " + message), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

class ValidationError : public IngestError {
 public:
  using IngestError::IngestError;
};

struct RespondentState {
  std::string name;
  std::optional<rdf::Iri> iri;

  friend bool operator==(const RespondentState&, const RespondentState&) = default;
};

// Normalised metadata of one ECHR judgment or decision.
struct CaseRecord {
  std::string title;
  identifiers::EcliId ecli;
  identifiers::DocumentType doc_type;
  std::chrono::year_month_day date;
  std::vector<identifiers::ApplicationNumber> application_numbers;
  std::optional<identifiers::ImportanceLevel> importance;
  std::vector<RespondentState> respondent_states;
  std::vector<std::string> convention_articles;
  std::optional<bool> unanimous;
  std::string language;
  std::string conclusion_abstract;
  std::vector<std::string> references;
  std::vector<std::string> contributors;
  std::string access_rights;
  rdf::Iri document_url;

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

// Throws ValidationError when the record breaks an invariant: the ECLI year must equal
// the date's year, judgments/decisions need an application number, language is required.
void validate(const CaseRecord& rec);

}  // namespace legalkg::ingestion
