#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "legalkg/identifiers/importance.hpp"
#include "legalkg/ingestion/case_record.hpp"
#include "legalkg/ingestion/states.hpp"

namespace legalkg::ingestion {

struct ParseOptions {
  const StateTable* states = nullptr;                      // bundled table when null
  const identifiers::ImportanceTable* importance = nullptr;  // HUDOC default when null
  std::optional<rdf::Iri> fallback_url;                    // used when the file names no URL
  std::vector<std::string>* warnings = nullptr;            // unknown fields, unresolved states
};

// Parses the fixture subset of a HUDOC "Case Details" page: a flat sequence of
// <dt>Field</dt><dd>value</dd> pairs, multi-valued fields repeating the pair.
CaseRecord parse_case_details_html(std::string_view html, const ParseOptions& opts = {});

// Parses the normalised JSON interchange form (snake_case keys).
CaseRecord parse_case_record_json(std::string_view json, const ParseOptions& opts = {});

// Serialises a record to the JSON interchange form accepted by parse_case_record_json.
std::string case_record_to_json(const CaseRecord& rec);

}  // namespace legalkg::ingestion
