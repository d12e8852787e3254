#include "legalkg/mapping/cq.hpp"

#include <algorithm>

#include "legalkg/sparql/eval.hpp"
#include "legalkg/sparql/parser.hpp"

namespace legalkg::mapping {

namespace {

std::string prologue(const VocabularyConfig& cfg) {
  return "PREFIX dcterms: <" + cfg.dcterms_ns.value() + ">\n" + "PREFIX pj: <" + cfg.custom_ns.value() + ">\n" +
         "PREFIX xsd: <" + std::string(rdf::xsd::kNs) + ">\n";
}

// Local name used in the query for a role's predicate.
std::string pred(const VocabularyConfig& cfg, Role r) { return "<" + cfg.predicate(r).value() + ">"; }

std::string value_of(const rdf::Term& t) {
  if (const auto* iri = std::get_if<rdf::Iri>(&t)) return iri->value();
  if (const auto* b = std::get_if<rdf::BlankNode>(&t)) return "_:" + b->label();
  return std::get<rdf::Literal>(t).lexical();
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::string> expected_answers(Role role, const ingestion::CaseRecord& rec) {
  std::vector<std::string> out;
  auto non_empty = [&](const std::string& s) {
    if (!s.empty()) out.push_back(s);
  };
  switch (role) {
    case Role::Type: out.push_back(rec.doc_type.code()); break;
    case Role::Date: out.push_back(identifiers::format_date(rec.date)); break;
    case Role::IsVersionOf:
      out.push_back(rec.document_url.value() + " | " + identifiers::format_ecli(rec.ecli));
      break;
    case Role::Contributor:
      for (const auto& c : rec.contributors) non_empty(c);
      break;
    case Role::RespondentState:
      for (const auto& s : rec.respondent_states) non_empty(s.iri ? s.iri->value() : s.name);
      break;
    case Role::Abstract: non_empty(rec.conclusion_abstract); break;
    case Role::UnanimousDecision: out.push_back(rec.unanimous.value_or(false) ? "true" : "false"); break;
    case Role::ConventionArticle:
      for (const auto& a : rec.convention_articles) non_empty(a);
      break;
    case Role::References:
      for (const auto& r : rec.references) non_empty(r);
      break;
    case Role::ImportanceLevel:
      if (rec.importance) out.push_back(std::to_string(rec.importance->canonical) + " | " + rec.importance->label);
      break;
    case Role::AccessRights: non_empty(rec.access_rights); break;
    case Role::Language: non_empty(rec.language); break;
    case Role::Identifier: out.push_back(rec.document_url.value()); break;
  }
  return sorted_unique(std::move(out));
}

}  // namespace

std::vector<CqTemplate> cq_query_templates(const VocabularyConfig& cfg) {
  const std::string pre = prologue(cfg);
  const std::string c(kCasePlaceholder);
  auto single = [&](Role r, const char* var) {
    return pre + "SELECT ?" + var + " WHERE { " + c + " " + pred(cfg, r) + " ?" + var + " } ORDER BY ?" + var;
  };
  std::vector<CqTemplate> out = {
      {"", Role::Type, "What type of document are we dealing with?", single(Role::Type, "type")},
      {"", Role::Date, "When is the document dated?", single(Role::Date, "date")},
      {"", Role::IsVersionOf, "Can I retrieve the information of a certain case given its identifier?",
       pre + "SELECT ?doc ?ecli WHERE {\n  " + c + " " + pred(cfg, Role::IsVersionOf) + " ?ecli .\n  ?doc " +
           pred(cfg, Role::IsVersionOf) + " ?ecli .\n}"},
      {"", Role::Contributor, "Who represents the applicant?", single(Role::Contributor, "contributor")},
      {"", Role::RespondentState, "To which European state does the applicant belong?",
       single(Role::RespondentState, "state")},
      {"", Role::Abstract, "What was the ruling?", single(Role::Abstract, "ruling")},
      {"", Role::UnanimousDecision, "Was the ruling unanimous?",
       pre + "ASK { " + c + " " + pred(cfg, Role::UnanimousDecision) + " ?u FILTER(?u = true) }"},
      {"", Role::ConventionArticle, "Which articles of the Convention were considered?",
       single(Role::ConventionArticle, "article")},
      {"", Role::References, "Which laws were considered to reach this conclusion?",
       single(Role::References, "reference")},
      {"", Role::ImportanceLevel, "What is the importance of the ruling concerning future cases?",
       pre + "SELECT ?level ?label WHERE {\n  " + c + " " + pred(cfg, Role::ImportanceLevel) +
           " ?level .\n  OPTIONAL { " + c + " <" + cfg.importance_label().value() + "> ?label }\n}"},
      {"", Role::AccessRights, "Is the document publicly accessible?", single(Role::AccessRights, "access")},
      {"", Role::Language, "In which language is the document written?", single(Role::Language, "language")},
      {"", Role::Identifier, "Where can I consult the document?",
       pre + "SELECT ?url WHERE { " + c + " " + pred(cfg, Role::Identifier) +
           " ?url FILTER(DATATYPE(?url) = xsd:anyURI) }"},
  };
  for (auto& t : out) t.name = std::string(role_key(t.role));
  return out;
}

std::string instantiate(const CqTemplate& t, const rdf::Iri& case_iri) {
  std::string out = t.query;
  const std::string iri = "<" + case_iri.value() + ">";
  for (auto pos = out.find(kCasePlaceholder); pos != std::string::npos;
       pos = out.find(kCasePlaceholder, pos + iri.size())) {
    out.replace(pos, kCasePlaceholder.size(), iri);
  }
  return out;
}

std::size_t CqReport::passed() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; }));
}

std::string CqReport::to_text() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
    return s + "]";
  };
  std::string out;
  for (const auto& o : outcomes) {
    out += (o.passed ? "PASS " : "FAIL ") + o.case_id + " " + o.template_name;
    if (!o.passed) out += " expected " + join(o.expected) + " got " + join(o.actual);
    out += "\n";
  }
  out += std::to_string(passed()) + "/" + std::to_string(outcomes.size()) + " competency checks passed\n";
  return out;
}

CqReport cq_validate(const rdf::Graph& kg, const std::vector<ingestion::LoadedCase>& corpus,
                     const VocabularyConfig& cfg) {
  const auto templates = cq_query_templates(cfg);
  CqReport report;
  for (const auto& c : corpus) {
    for (const auto& t : templates) {
      CqOutcome o;
      o.case_id = c.case_id;
      o.template_name = t.name;
      o.expected = expected_answers(t.role, c.record);
      const auto rs = sparql::run_query(instantiate(t, c.record.document_url), kg);
      if (rs.kind == sparql::ResultSet::Kind::Boolean) {
        o.actual.push_back(rs.boolean ? "true" : "false");
      } else {
        for (const auto& mu : rs.solutions) {
          std::string row;
          for (std::size_t i = 0; i < rs.vars.size(); ++i) {
            auto it = mu.find(rs.vars[i]);
            row += (i ? " | " : "") + (it == mu.end() ? std::string() : value_of(it->second));
          }
          o.actual.push_back(std::move(row));
        }
      }
      o.actual = sorted_unique(std::move(o.actual));
      o.passed = o.expected == o.actual;
      report.outcomes.push_back(std::move(o));
    }
  }
  return report;
}

}  // namespace legalkg::mapping
