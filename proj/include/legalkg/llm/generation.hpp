#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "legalkg/llm/chunking.hpp"
#include "legalkg/llm/provider.hpp"
#include "legalkg/llm/retrieval.hpp"
#include "legalkg/rdf/graph.hpp"

namespace legalkg::llm {

inline constexpr std::string_view kLlmNs = "https://w3id.org/prejust4woman/llm#";

// A provider response that is not Turtle, even after the repair pass.
class ResponseFormatError : public std::runtime_error {
 public:
  ResponseFormatError(const std::string& message, std::string raw)
      : std::runtime_error(message), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

// Drops Markdown code fences and any prose before the first directive or triple.
std::string repair_turtle(std::string_view response);

struct ParsedResponse {
  rdf::Graph graph;
  bool repaired = false;
};

// Parses as-is first, then once more after repair_turtle.
ParsedResponse parse_turtle_response(std::string_view response);

struct Census {
  std::size_t classes = 0;
  std::size_t object_properties = 0;
  std::size_t data_properties = 0;

  bool operator==(const Census&) const = default;
};

// Distinct subjects typed owl:Class / owl:ObjectProperty / owl:DatatypeProperty.
Census declaration_census(const rdf::Graph& g);

// Content dropped while building the ontology, one per triple.
struct PruneRecord {
  std::string source;  // "<template>/<key>"
  std::string triple;  // N-Triples line without the trailing newline
  std::string reason;
};

struct OntologyResult {
  rdf::Graph ontology;
  std::vector<PruneRecord> pruned;
};

// Keeps declarations (rdf:type owl:Class / ObjectProperty / DatatypeProperty)
// and schema statements (subClassOf, domain, range, label, comment, ...) about
// declared terms. Everything else goes to the pruning list.
OntologyResult prune_to_declarations(const rdf::Graph& response, const rdf::Graph& known,
                                     const std::string& source);

OntologyResult seed_ontology(Provider& provider, std::string_view domain);

// Expands `seed` with one zero-shot prompt per document.
OntologyResult generate_ontology(Provider& provider, const rdf::Graph& seed, const std::vector<Document>& docs,
                                 StrategyKind strategy);

struct Reject {
  std::string doc_id;
  std::string triple;
  std::string reason;
};

struct KgResult {
  rdf::Graph graph;
  std::vector<Reject> rejects;
};

// Few-shot prompt per document. rdf:type triples whose class the ontology does
// not declare are moved to `rejects`. Throws std::invalid_argument on an empty ontology.
KgResult generate_kg(Provider& provider, const rdf::Graph& ontology, const Document& doc, StrategyKind strategy);

// Set union; IRIs are kept as they are and blank node labels are shared between inputs.
rdf::Graph merge_kgs(const std::vector<rdf::Graph>& graphs);

// Question lines of the response (numbering and bullets removed), deduplicated, in order.
std::vector<std::string> generate_cqs(Provider& provider, const rdf::Graph& ontology);

struct CqAnswer {
  std::string question;
  std::string answer;
  std::vector<std::string> chunk_ids;  // context handed to the provider
  bool no_context = false;
};

// With an empty index the provider is not called and the answer is flagged no_context.
CqAnswer answer_cq(Provider& provider, const RetrievalIndex& index, std::string_view question,
                   const std::string& key, StrategyKind strategy, std::size_t k = kDefaultTopK);

}  // namespace legalkg::llm
