#include "legalkg/ingestion/case_record.hpp"

namespace legalkg::ingestion {

void validate(const CaseRecord& rec) {
  const std::string id = identifiers::format_ecli(rec.ecli);
  if (!rec.date.ok()) throw ValidationError(id + ": invalid date");
  if (static_cast<int>(rec.date.year()) != rec.ecli.year()) {
    throw ValidationError(id + ": ECLI year " + std::to_string(rec.ecli.year()) +
                          " differs from document date " + identifiers::format_date(rec.date));
  }
  using Kind = identifiers::DocumentType::Kind;
  if (rec.doc_type.kind() != Kind::Other && rec.application_numbers.empty()) {
    throw ValidationError(id + ": no application number");
  }
  if (rec.language.empty()) throw ValidationError(id + ": empty language");
}

}  // namespace legalkg::ingestion
