#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/mapping/vocabulary.hpp"
#include "legalkg/rdf/graph.hpp"

namespace legalkg::mapping {

// Ontology schema: the three case-law classes and the custom case properties.
rdf::Graph emit_tbox(const VocabularyConfig& cfg = VocabularyConfig::defaults());

// Instance triples of one record. The subject is the record's document URL.
rdf::Graph case_to_triples(const ingestion::CaseRecord& rec,
                           const VocabularyConfig& cfg = VocabularyConfig::defaults());

// T-box merged with every case graph. Each record is validated first; a failure is
// rethrown nested in an IngestError naming the case id.
rdf::Graph build_kg(const std::vector<ingestion::LoadedCase>& corpus,
                    const VocabularyConfig& cfg = VocabularyConfig::defaults());
rdf::Graph build_kg(const std::vector<ingestion::CaseRecord>& corpus,
                    const VocabularyConfig& cfg = VocabularyConfig::defaults());

struct KgStats {
  std::size_t triples = 0;
  std::size_t distinct_predicates = 0;
  std::size_t distinct_entities = 0;  // IRI/blank subjects and objects

  friend bool operator==(const KgStats&, const KgStats&) = default;
};

KgStats kg_stats(const rdf::Graph& g);
std::string kg_stats_json(const KgStats& s);

// Binds rdf, rdfs, owl, xsd, dcterms and the custom namespace (as "pj").
void bind_standard_prefixes(rdf::Graph& g, const VocabularyConfig& cfg);

}  // namespace legalkg::mapping
