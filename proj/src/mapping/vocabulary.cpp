#include "legalkg/mapping/vocabulary.hpp"

#include <set>

#include <json.hpp>

#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/io_error.hpp"

namespace legalkg::mapping {

std::string_view role_key(Role r) noexcept {
  switch (r) {
    case Role::Type: return "type";
    case Role::Date: return "date";
    case Role::IsVersionOf: return "isVersionOf";
    case Role::Contributor: return "contributor";
    case Role::RespondentState: return "respondentState";
    case Role::Abstract: return "abstract";
    case Role::UnanimousDecision: return "unanimousDecision";
    case Role::ConventionArticle: return "involveConventionArticle";
    case Role::References: return "references";
    case Role::ImportanceLevel: return "importanceLevel";
    case Role::AccessRights: return "accessRights";
    case Role::Language: return "language";
    case Role::Identifier: return "identifier";
  }
  return "";
}

Role role_from_key(std::string_view key) {
  for (const Role r : kAllRoles) {
    if (role_key(r) == key) return r;
  }
  throw ConfigError("unknown vocabulary role '" + std::string(key) + "'");
}

namespace {

bool is_custom_role(Role r) {
  return r == Role::RespondentState || r == Role::UnanimousDecision || r == Role::ConventionArticle ||
         r == Role::ImportanceLevel;
}

}  // namespace

VocabularyConfig VocabularyConfig::with_namespaces(const rdf::Iri& dcterms_ns, const rdf::Iri& custom_ns) {
  VocabularyConfig cfg;
  cfg.dcterms_ns = dcterms_ns;
  cfg.custom_ns = custom_ns;
  for (const Role r : kAllRoles) {
    const auto& ns = is_custom_role(r) ? custom_ns : dcterms_ns;
    cfg.term_map.emplace(r, rdf::Iri(ns.value() + std::string(role_key(r))));
  }
  return cfg;
}

VocabularyConfig VocabularyConfig::defaults() {
  return with_namespaces(rdf::Iri(std::string(rdf::vocab::kDcterms)), rdf::Iri(std::string(kDefaultCustomNs)));
}

void VocabularyConfig::validate() const {
  std::set<std::string> seen;
  for (const Role r : kAllRoles) {
    auto it = term_map.find(r);
    if (it == term_map.end()) throw ConfigError("vocabulary role '" + std::string(role_key(r)) + "' is not mapped");
    if (!seen.insert(it->second.value()).second) {
      throw ConfigError("predicate <" + it->second.value() + "> is mapped to more than one role");
    }
  }
  for (const auto& extra : {application_numbers(), importance_label()}) {
    if (seen.contains(extra.value())) throw ConfigError("predicate <" + extra.value() + "> clashes with a reserved property");
  }
}

VocabularyConfig VocabularyConfig::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("vocabulary config: ") + e.what());
  }
  // A full CLI config nests the vocabulary under "vocabulary".
  if (j.is_object() && j.contains("vocabulary")) j = j["vocabulary"];
  if (!j.is_object()) throw ConfigError("vocabulary config must be a JSON object");

  auto iri_at = [&](const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected an IRI string");
    try {
      return rdf::Iri(v.get<std::string>());
    } catch (const rdf::StructuralError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  };
  rdf::Iri dc(std::string(rdf::vocab::kDcterms));
  rdf::Iri custom{std::string(kDefaultCustomNs)};
  for (const auto& [key, value] : j.items()) {
    if (key == "dcterms_ns") {
      dc = iri_at(value, key);
    } else if (key == "custom_ns") {
      custom = iri_at(value, key);
    } else if (key != "terms") {
      throw ConfigError("vocabulary config: unknown key '" + key + "'");
    }
  }
  auto cfg = with_namespaces(dc, custom);
  if (auto terms = j.find("terms"); terms != j.end()) {
    if (!terms->is_object()) throw ConfigError("terms: expected an object");
    for (const auto& [key, value] : terms->items()) {
      cfg.term_map.insert_or_assign(role_from_key(key), iri_at(value, "terms." + key));
    }
  }
  cfg.validate();
  return cfg;
}

VocabularyConfig VocabularyConfig::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ingestion::read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return from_json(text);
}

}  // namespace legalkg::mapping
