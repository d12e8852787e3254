#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "legalkg/rdf/term.hpp"

namespace legalkg::mapping {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One row of the metadata-to-vocabulary mapping table.
enum class Role {
  Type,
  Date,
  IsVersionOf,
  Contributor,
  RespondentState,
  Abstract,
  UnanimousDecision,
  ConventionArticle,
  References,
  ImportanceLevel,
  AccessRights,
  Language,
  Identifier,
};

inline constexpr std::array<Role, 13> kAllRoles = {
    Role::Type,           Role::Date,       Role::IsVersionOf,       Role::Contributor, Role::RespondentState,
    Role::Abstract,       Role::UnanimousDecision, Role::ConventionArticle, Role::References,
    Role::ImportanceLevel, Role::AccessRights, Role::Language,         Role::Identifier};

// Config key of a role, e.g. "respondentState" or "isVersionOf".
std::string_view role_key(Role r) noexcept;
Role role_from_key(std::string_view key);

inline constexpr std::string_view kDefaultCustomNs = "https://w3id.org/prejust4woman/ontology#";

struct VocabularyConfig {
  rdf::Iri dcterms_ns{std::string(rdf::vocab::kDcterms)};
  rdf::Iri custom_ns{std::string(kDefaultCustomNs)};
  std::map<Role, rdf::Iri> term_map;

  // Properties declared in the T-box but outside the role table.
  rdf::Iri application_numbers() const { return custom("applicationNumbers"); }
  rdf::Iri importance_label() const { return custom("importanceLevelLabel"); }

  rdf::Iri domestic_law() const { return custom("DomesticLaw"); }
  rdf::Iri international_law() const { return custom("InternationalLaw"); }
  rdf::Iri strasbourg_case_law() const { return custom("StrasbourgCaseLaw"); }

  const rdf::Iri& predicate(Role r) const { return term_map.at(r); }
  rdf::Iri custom(std::string_view local) const { return rdf::Iri(custom_ns.value() + std::string(local)); }

  // Throws ConfigError unless all 13 roles map to distinct IRIs.
  void validate() const;

  static VocabularyConfig defaults();
  // Same as defaults(), built for a different custom namespace.
  static VocabularyConfig with_namespaces(const rdf::Iri& dcterms_ns, const rdf::Iri& custom_ns);

  // JSON object with optional keys "dcterms_ns", "custom_ns" and "terms" (role key -> IRI).
  static VocabularyConfig from_json(std::string_view text);
  static VocabularyConfig load(const std::filesystem::path& path);
};

}  // namespace legalkg::mapping
