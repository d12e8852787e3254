#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "legalkg/ingestion/case_record.hpp"

namespace legalkg::ingestion {

class UnresolvedStateError : public IngestError {
 public:
  explicit UnresolvedStateError(std::string name)
      : IngestError("unresolved respondent state '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// State name -> Wikidata entity lookup. Names match case-insensitively with
// surrounding/repeated whitespace ignored.
class StateTable {
 public:
  // CSV with header `name,qid`; several names may share one QID (aliases).
  static StateTable load(const std::filesystem::path& csv);
  static StateTable parse(std::string_view csv_text);

  void add(std::string_view name, std::string_view qid);
  rdf::Iri resolve(std::string_view name) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, std::string> entries_;  // folded name -> QID
};

// Uses the bundled table under the data directory.
rdf::Iri map_state_to_wikidata(std::string_view name);

const StateTable& bundled_state_table();

}  // namespace legalkg::ingestion
