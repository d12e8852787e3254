#include "legalkg/rdf/graph.hpp"

#include <cctype>

namespace legalkg::rdf {

namespace {

bool is_valid_prefix_name(std::string_view name) {
  if (name.empty()) return true;
  if (!std::isalpha(static_cast<unsigned char>(name.front())) || name.back() == '.') return false;
  for (const char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

}  // namespace

void Graph::bind_prefix(std::string prefix, std::string ns) {
  if (!is_valid_prefix_name(prefix)) throw StructuralError("prefix", "invalid prefix name '" + prefix + "'");
  if (!is_absolute_iri(ns)) throw StructuralError("prefix", "namespace is not an absolute IRI: '" + ns + "'");
  prefixes_[std::move(prefix)] = std::move(ns);
}

std::vector<Triple> Graph::match(const Term* s, const Iri* p, const Term* o) const {
  std::vector<Triple> out;
  match(s, p, o, [&](const Triple& t) { out.push_back(t); });
  return out;
}

Graph graph_insert(Graph g, Triple t) {
  g.insert(std::move(t));
  return g;
}

Graph merge(const Graph& g1, const Graph& g2) {
  Graph out = g1;
  for (const auto& t : g2) out.insert(t);
  for (const auto& [prefix, ns] : g2.prefixes()) {
    if (!g1.prefixes().contains(prefix)) out.bind_prefix(prefix, ns);
  }
  return out;
}

std::uint64_t fingerprint(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& t : g) {
    const std::string line =
        to_ntriples(t.subject) + ' ' + to_ntriples(t.predicate) + ' ' + to_ntriples(t.object) + '\n';
    for (const char c : line) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace legalkg::rdf
