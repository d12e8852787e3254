#include "legalkg/mapping/mapping.hpp"

#include <set>

#include <json.hpp>

namespace legalkg::mapping {

using rdf::Graph;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
using rdf::Triple;

namespace {

Iri rdfs_iri(std::string_view local) { return Iri(std::string(rdf::vocab::kRdfs) + std::string(local)); }
Iri owl_iri(std::string_view local) { return Iri(std::string(rdf::vocab::kOwl) + std::string(local)); }
Iri xsd_iri(std::string_view dt) { return Iri(std::string(dt)); }

}  // namespace

void bind_standard_prefixes(Graph& g, const VocabularyConfig& cfg) {
  g.bind_prefix("rdf", std::string(rdf::vocab::kRdf));
  g.bind_prefix("rdfs", std::string(rdf::vocab::kRdfs));
  g.bind_prefix("owl", std::string(rdf::vocab::kOwl));
  g.bind_prefix("xsd", std::string(rdf::xsd::kNs));
  g.bind_prefix("dcterms", cfg.dcterms_ns.value());
  g.bind_prefix("pj", cfg.custom_ns.value());
}

Graph emit_tbox(const VocabularyConfig& cfg) {
  Graph g;
  bind_standard_prefixes(g, cfg);
  const Iri type(std::string(rdf::vocab::kRdfType));
  const Iri label = rdfs_iri("label");
  const Iri domain = rdfs_iri("domain");
  const Iri range = rdfs_iri("range");

  const std::pair<Iri, const char*> classes[] = {
      {cfg.domestic_law(), "Domestic Law"},
      {cfg.international_law(), "International Law"},
      {cfg.strasbourg_case_law(), "Strasbourg Case Law"},
  };
  for (const auto& [cls, name] : classes) {
    g.insert(Triple(cls, type, owl_iri("Class")));
    g.insert(Triple(cls, label, Literal(name)));
  }

  struct PropertySpec {
    Iri iri;
    const char* label;
    bool object;
    std::optional<Iri> range;
  };
  // Labels carry the plural names used when describing the schema in prose.
  const PropertySpec props[] = {
      {cfg.predicate(Role::RespondentState), "respondentStates", true, std::nullopt},
      {cfg.predicate(Role::ConventionArticle), "involvedArticles", false, xsd_iri(rdf::xsd::kString)},
      {cfg.predicate(Role::UnanimousDecision), "unanimousDecisionIndicators", false, xsd_iri(rdf::xsd::kBoolean)},
      {cfg.predicate(Role::ImportanceLevel), "importanceLevel", false, xsd_iri(rdf::xsd::kInteger)},
      {cfg.application_numbers(), "applicationNumbers", false, xsd_iri(rdf::xsd::kString)},
      {cfg.importance_label(), "importanceLevelLabel", false, xsd_iri(rdf::xsd::kString)},
  };
  for (const auto& p : props) {
    g.insert(Triple(p.iri, type, p.object ? owl_iri("ObjectProperty") : owl_iri("DatatypeProperty")));
    g.insert(Triple(p.iri, label, Literal(p.label)));
    g.insert(Triple(p.iri, domain, cfg.strasbourg_case_law()));
    if (p.range) g.insert(Triple(p.iri, range, *p.range));
  }
  return g;
}

Graph case_to_triples(const ingestion::CaseRecord& rec, const VocabularyConfig& cfg) {
  Graph g;
  bind_standard_prefixes(g, cfg);
  const Term subject = rec.document_url;
  auto add = [&](Role role, Term object) { g.insert(Triple(subject, cfg.predicate(role), std::move(object))); };
  auto add_text = [&](Role role, const std::string& text) {
    if (!text.empty()) add(role, Literal(text));
  };

  g.insert(Triple(subject, Iri(std::string(rdf::vocab::kRdfType)), cfg.strasbourg_case_law()));
  add(Role::Type, Literal(rec.doc_type.code()));
  add(Role::Date, Literal(identifiers::format_date(rec.date), xsd_iri(rdf::xsd::kDate)));
  add(Role::IsVersionOf, Literal(identifiers::format_ecli(rec.ecli)));
  for (const auto& c : rec.contributors) add_text(Role::Contributor, c);
  for (const auto& s : rec.respondent_states) {
    if (s.iri) {
      add(Role::RespondentState, *s.iri);
    } else {
      add_text(Role::RespondentState, s.name);
    }
  }
  add_text(Role::Abstract, rec.conclusion_abstract);
  if (rec.unanimous) {
    add(Role::UnanimousDecision, Literal(*rec.unanimous ? "true" : "false", xsd_iri(rdf::xsd::kBoolean)));
  }
  for (const auto& a : rec.convention_articles) add_text(Role::ConventionArticle, a);
  for (const auto& r : rec.references) add_text(Role::References, r);
  if (rec.importance) {
    add(Role::ImportanceLevel, Literal(std::to_string(rec.importance->canonical), xsd_iri(rdf::xsd::kInteger)));
    g.insert(Triple(subject, cfg.importance_label(), Literal(rec.importance->label)));
  }
  add_text(Role::AccessRights, rec.access_rights);
  add_text(Role::Language, rec.language);
  add(Role::Identifier, Literal(rec.document_url.value(), xsd_iri(rdf::xsd::kAnyUri)));
  return g;
}

Graph build_kg(const std::vector<ingestion::LoadedCase>& corpus, const VocabularyConfig& cfg) {
  Graph kg = emit_tbox(cfg);
  for (const auto& c : corpus) {
    try {
      ingestion::validate(c.record);
      for (const auto& t : case_to_triples(c.record, cfg)) kg.insert(t);
    } catch (const std::exception&) {
      std::throw_with_nested(ingestion::IngestError("case '" + c.case_id + "'"));
    }
  }
  return kg;
}

Graph build_kg(const std::vector<ingestion::CaseRecord>& corpus, const VocabularyConfig& cfg) {
  std::vector<ingestion::LoadedCase> loaded;
  loaded.reserve(corpus.size());
  for (const auto& rec : corpus) loaded.push_back({identifiers::format_ecli(rec.ecli), rec, {}});
  return build_kg(loaded, cfg);
}

KgStats kg_stats(const Graph& g) {
  std::set<Iri> predicates;
  std::set<Term> entities;
  for (const auto& t : g) {
    predicates.insert(t.predicate);
    entities.insert(t.subject);
    if (!rdf::is_literal(t.object)) entities.insert(t.object);
  }
  return {g.size(), predicates.size(), entities.size()};
}

std::string kg_stats_json(const KgStats& s) {
  nlohmann::ordered_json j;
  j["triples"] = s.triples;
  j["distinct_predicates"] = s.distinct_predicates;
  j["distinct_entities"] = s.distinct_entities;
  return j.dump();
}

}  // namespace legalkg::mapping
