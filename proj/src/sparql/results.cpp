#include "legalkg/sparql/results.hpp"

#include <json.hpp>

#include "legalkg/ingestion/corpus.hpp"

namespace legalkg::sparql {

namespace {

nlohmann::ordered_json term_json(const rdf::Term& t) {
  nlohmann::ordered_json j;
  if (const auto* iri = std::get_if<rdf::Iri>(&t)) {
    j["type"] = "uri";
    j["value"] = iri->value();
  } else if (const auto* b = std::get_if<rdf::BlankNode>(&t)) {
    j["type"] = "bnode";
    j["value"] = b->label();
  } else {
    const auto& lit = std::get<rdf::Literal>(t);
    j["type"] = "literal";
    j["value"] = lit.lexical();
    if (lit.langtag()) {
      j["xml:lang"] = *lit.langtag();
    } else if (!lit.is_plain_string()) {
      j["datatype"] = lit.datatype().value();
    }
  }
  return j;
}

std::string csv_value(const rdf::Term& t) {
  if (const auto* iri = std::get_if<rdf::Iri>(&t)) return iri->value();
  if (const auto* b = std::get_if<rdf::BlankNode>(&t)) return "_:" + b->label();
  return std::get<rdf::Literal>(t).lexical();
}

}  // namespace

std::string serialize_results_json(const ResultSet& r) {
  nlohmann::ordered_json j;
  j["head"] = nlohmann::ordered_json::object();
  if (r.kind == ResultSet::Kind::Boolean) {
    j["boolean"] = r.boolean;
    return j.dump();
  }
  j["head"]["vars"] = r.vars;
  auto bindings = nlohmann::ordered_json::array();
  for (const auto& mu : r.solutions) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& v : r.vars) {
      if (auto it = mu.find(v); it != mu.end()) row[v] = term_json(it->second);
    }
    bindings.push_back(std::move(row));
  }
  j["results"]["bindings"] = std::move(bindings);
  return j.dump();
}

std::string serialize_results_csv(const ResultSet& r) {
  if (r.kind == ResultSet::Kind::Boolean) throw SerializationError("ASK results have no CSV serialization");
  std::string out;
  for (std::size_t i = 0; i < r.vars.size(); ++i) {
    if (i > 0) out += ',';
    out += ingestion::csv_escape(r.vars[i]);
  }
  out += "\r\n";
  for (const auto& mu : r.solutions) {
    for (std::size_t i = 0; i < r.vars.size(); ++i) {
      if (i > 0) out += ',';
      if (auto it = mu.find(r.vars[i]); it != mu.end()) out += ingestion::csv_escape(csv_value(it->second));
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace legalkg::sparql
