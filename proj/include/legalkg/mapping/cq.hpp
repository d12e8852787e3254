#pragma once

#include <string>
#include <vector>

#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/mapping/vocabulary.hpp"
#include "legalkg/rdf/graph.hpp"

namespace legalkg::mapping {

inline constexpr std::string_view kCasePlaceholder = "{{case}}";

// One competency question and the query answering it for a single case.
struct CqTemplate {
  std::string name;  // the role key, e.g. "respondentState"
  Role role;
  std::string question;
  std::string query;  // contains kCasePlaceholder
};

// The 13 templates, one per mapping role, in table order.
std::vector<CqTemplate> cq_query_templates(const VocabularyConfig& cfg = VocabularyConfig::defaults());

// Substitutes the case IRI (as <...>) for every placeholder.
std::string instantiate(const CqTemplate& t, const rdf::Iri& case_iri);

struct CqOutcome {
  std::string case_id;
  std::string template_name;
  bool passed = false;
  std::vector<std::string> expected;  // sorted
  std::vector<std::string> actual;    // sorted
};

struct CqReport {
  std::vector<CqOutcome> outcomes;

  std::size_t passed() const;
  std::size_t failed() const { return outcomes.size() - passed(); }
  bool all_passed() const { return failed() == 0; }
  std::string to_text() const;
};

// Runs every template for every case over `kg` and compares the answers with the values
// read straight from the source records.
CqReport cq_validate(const rdf::Graph& kg, const std::vector<ingestion::LoadedCase>& corpus,
                     const VocabularyConfig& cfg = VocabularyConfig::defaults());

}  // namespace legalkg::mapping
