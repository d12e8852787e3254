#include "legalkg/llm/prompts.hpp"

#include <array>

namespace legalkg::llm {
namespace {

constexpr const char* kExampleInput =
    "CASE OF X v. STATE. The applicant complained that the police ignored her reports of beatings by her "
    "partner. The Court found a violation of Article 3 and awarded EUR 5000.";

constexpr const char* kExampleOutput = R"(@prefix llm: <https://w3id.org/prejust4woman/llm#> .
@prefix kg: <https://w3id.org/prejust4woman/llm/kg/> .

kg:x_case a llm:LegalCase ; llm:caseName "X v. State" ; llm:involvesAbuse kg:x_abuse ; llm:hasJudgment kg:x_judgment .
kg:x_abuse a llm:Abuse ; llm:abuseType "beatings by her partner" .
kg:x_judgment a llm:Judgment ; llm:outcome "violation of Article 3" ; llm:awardsDamage kg:x_damage .
kg:x_damage a llm:Damage ; llm:damageAmount 5000.00 ; llm:currency "EUR" .)";

std::array<PromptTemplate, 5> make_templates() {
  std::array<PromptTemplate, 5> t;
  t[0] = {PromptId::OntologySeed,
          "You are an ontology engineer. Write an OWL ontology in Turtle for the domain of {{domain}}. "
          "Declare classes with owl:Class and relations with owl:ObjectProperty, each with rdfs:domain and "
          "rdfs:range. Use the namespace {{namespace}}. Answer with Turtle only.",
          PromptTemplate::Mode::ZeroShot,
          {}};
  t[1] = {PromptId::OntologyExpand,
          "Here is the current ontology:\n{{ontology}}\n\nRead the document below and add the classes, object "
          "properties and data properties it needs that are missing. Reuse existing terms where possible and do not "
          "add instances. Answer with Turtle only.\n\nDocument:\n{{document}}",
          PromptTemplate::Mode::ZeroShot,
          {}};
  t[2] = {PromptId::KgGenerate,
          "Extract a knowledge graph from the document using only the classes and properties of this ontology:\n"
          "{{ontology}}\n\nName instances under {{instance_namespace}} with the document id as prefix. "
          "Answer with Turtle only.\n\n{{examples}}Document {{doc_id}}:\n{{document}}",
          PromptTemplate::Mode::FewShot,
          {{kExampleInput, kExampleOutput}}};
  t[3] = {PromptId::CqGenerate,
          "Given the ontology below, list competency questions it should be able to answer, one per line.\n\n"
          "{{ontology}}",
          PromptTemplate::Mode::ZeroShot,
          {}};
  t[4] = {PromptId::CqAnswer,
          "Answer the question using only the context. If the context does not contain the answer, say so.\n\n"
          "Context:\n{{context}}\n\nQuestion: {{question}}",
          PromptTemplate::Mode::ZeroShot,
          {}};
  return t;
}

}  // namespace

const PromptTemplate& prompt_template(PromptId id) {
  static const auto templates = make_templates();
  return templates[static_cast<std::size_t>(id)];
}

std::string render(const PromptTemplate& t, const std::map<std::string, std::string>& values) {
  std::string examples;
  if (t.mode == PromptTemplate::Mode::FewShot) {
    if (t.few_shot_examples.empty()) throw TemplateError("few-shot template without examples");
    for (std::size_t i = 0; i < t.few_shot_examples.size(); ++i) {
      const auto n = std::to_string(i + 1);
      const auto& [in, out] = t.few_shot_examples[i];
      examples += "Example " + n + " input:\n" + in + "\nExample " + n + " output:\n" + out + "\n\n";
    }
  }

  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = t.body.find("{{", pos);
    if (open == std::string::npos) break;
    const auto close = t.body.find("}}", open + 2);
    if (close == std::string::npos) throw TemplateError("unterminated placeholder in template");
    out.append(t.body, pos, open - pos);
    const std::string name = t.body.substr(open + 2, close - open - 2);
    if (name == "examples" && t.mode == PromptTemplate::Mode::FewShot) {
      out += examples;
    } else if (auto it = values.find(name); it != values.end()) {
      out += it->second;
    } else {
      throw TemplateError("no value for placeholder {{" + name + "}} in " + std::string(prompt_id_name(t.id)));
    }
    pos = close + 2;
  }
  out.append(t.body, pos);
  return out;
}

}  // namespace legalkg::llm
