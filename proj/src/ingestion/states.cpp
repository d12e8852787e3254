#include "legalkg/ingestion/states.hpp"

#include <cctype>

#include "legalkg/data.hpp"
#include "legalkg/ingestion/corpus.hpp"

namespace legalkg::ingestion {

namespace {

std::string fold(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (const char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (out.starts_with("the ")) out.erase(0, 4);
  return out;
}

constexpr std::string_view kWikidataEntity = "http://www.wikidata.org/entity/";

}  // namespace

StateTable StateTable::load(const std::filesystem::path& csv) { return parse(read_file(csv)); }

StateTable StateTable::parse(std::string_view csv_text) {
  StateTable table;
  auto rows = parse_csv(csv_text);
  if (rows.empty() || rows.front() != std::vector<std::string>{"name", "qid"}) {
    throw IngestError("state table must start with header 'name,qid'");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw IngestError("state table row " + std::to_string(i + 1) + " needs 2 fields");
    table.add(rows[i][0], rows[i][1]);
  }
  return table;
}

void StateTable::add(std::string_view name, std::string_view qid) {
  if (qid.size() < 2 || qid.front() != 'Q') throw IngestError("invalid Wikidata id '" + std::string(qid) + "'");
  for (const char c : qid.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw IngestError("invalid Wikidata id '" + std::string(qid) + "'");
  }
  entries_[fold(name)] = std::string(qid);
}

rdf::Iri StateTable::resolve(std::string_view name) const {
  auto it = entries_.find(fold(name));
  if (it == entries_.end()) throw UnresolvedStateError(std::string(name));
  return rdf::Iri(std::string(kWikidataEntity) + it->second);
}

const StateTable& bundled_state_table() {
  static const StateTable table = StateTable::load(data_path("states/wikidata_states.csv"));
  return table;
}

rdf::Iri map_state_to_wikidata(std::string_view name) { return bundled_state_table().resolve(name); }

}  // namespace legalkg::ingestion
