#include "legalkg/llm/generation.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "legalkg/llm/prompts.hpp"
#include "legalkg/rdf/turtle.hpp"

namespace legalkg::llm {
namespace {

const std::string kOwl(rdf::vocab::kOwl);
const std::string kRdfs(rdf::vocab::kRdfs);
const rdf::Iri kType{std::string(rdf::vocab::kRdfType)};
const rdf::Iri kOwlClass{kOwl + "Class"};
const rdf::Iri kObjectProperty{kOwl + "ObjectProperty"};
const rdf::Iri kDatatypeProperty{kOwl + "DatatypeProperty"};
constexpr std::string_view kInstanceNs = "https://w3id.org/prejust4woman/llm/kg/";

bool is_declaration_type(const rdf::Term& t) {
  return t == rdf::Term(kOwlClass) || t == rdf::Term(kObjectProperty) || t == rdf::Term(kDatatypeProperty);
}

const std::set<std::string>& schema_predicates() {
  static const std::set<std::string> preds = {
      kRdfs + "subClassOf",     kRdfs + "subPropertyOf",  kRdfs + "domain",          kRdfs + "range",
      kRdfs + "label",          kRdfs + "comment",        kOwl + "inverseOf",        kOwl + "equivalentClass",
      kOwl + "equivalentProperty", kOwl + "disjointWith", std::string(rdf::vocab::kRdfType)};
  return preds;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1));
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) out.emplace_back(text.substr(pos));
      break;
    }
    out.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

bool starts_turtle(const std::string& line) {
  static const std::regex re(R"(^(@prefix|@base|prefix\s|base\s|<|_:|[A-Za-z_][\w.-]*:|:))", std::regex::icase);
  return std::regex_search(line, re);
}

std::string triple_line(const rdf::Triple& t) {
  return rdf::to_ntriples(t.subject) + " " + rdf::to_ntriples(t.predicate) + " " + rdf::to_ntriples(t.object) + " .";
}

std::set<rdf::Term> declared_subjects(const rdf::Graph& g, const rdf::Iri* only) {
  std::set<rdf::Term> out;
  for (const auto& t : g) {
    if (t.predicate != kType) continue;
    if (only ? t.object == rdf::Term(*only) : is_declaration_type(t.object)) out.insert(t.subject);
  }
  return out;
}

std::string variant_of(StrategyKind k) { return k == StrategyKind::SubPart ? "subpart" : ""; }

std::string source_of(PromptId id, const std::string& key) { return std::string(prompt_id_name(id)) + "/" + key; }

void note_repair(std::vector<PruneRecord>& pruned, const ParsedResponse& parsed, const std::string& source) {
  if (parsed.repaired) pruned.push_back({source, "", "response repaired: code fences or surrounding prose removed"});
}

}  // namespace

std::string repair_turtle(std::string_view response) {
  auto lines = lines_of(response);

  const auto is_fence = [](const std::string& l) { return trim(l).starts_with("```"); };
  if (auto open = std::find_if(lines.begin(), lines.end(), is_fence); open != lines.end()) {
    auto close = std::find_if(open + 1, lines.end(), is_fence);
    lines = std::vector<std::string>(open + 1, close);
  }

  const auto first = std::find_if(lines.begin(), lines.end(), [](const std::string& l) { return starts_turtle(trim(l)); });
  auto last = lines.end();
  while (last != first && !trim(*(last - 1)).ends_with('.')) --last;

  std::string out;
  for (auto it = first; it != last; ++it) out += *it + "\n";
  return out;
}

ParsedResponse parse_turtle_response(std::string_view response) {
  try {
    return {rdf::parse_turtle(response), false};
  } catch (const rdf::SyntaxError&) {
  }
  const auto repaired = repair_turtle(response);
  if (trim(repaired).empty()) throw ResponseFormatError("response contains no Turtle", std::string(response));
  try {
    return {rdf::parse_turtle(repaired), true};
  } catch (const rdf::SyntaxError& e) {
    throw ResponseFormatError(std::string("response is not Turtle even after repair: ") + e.what(),
                              std::string(response));
  }
}

Census declaration_census(const rdf::Graph& g) {
  return {declared_subjects(g, &kOwlClass).size(), declared_subjects(g, &kObjectProperty).size(),
          declared_subjects(g, &kDatatypeProperty).size()};
}

OntologyResult prune_to_declarations(const rdf::Graph& response, const rdf::Graph& known, const std::string& source) {
  auto declared = declared_subjects(known, nullptr);
  declared.merge(declared_subjects(response, nullptr));
  std::set<rdf::Term> typed;
  for (const auto& t : response) {
    if (t.predicate == kType) typed.insert(t.subject);
  }

  OntologyResult r;
  for (const auto& t : response) {
    std::string reason;
    if (!declared.contains(t.subject)) {
      reason = typed.contains(t.subject) ? "instance data" : "statement about an undeclared term";
    } else if (!schema_predicates().contains(t.predicate.value())) {
      reason = "non-schema predicate";
    } else if (t.predicate == kType && !is_declaration_type(t.object)) {
      reason = "non-declaration type";
    }
    if (reason.empty()) {
      r.ontology.insert(t);
    } else {
      r.pruned.push_back({source, triple_line(t), reason});
    }
  }
  return r;
}

OntologyResult seed_ontology(Provider& provider, std::string_view domain) {
  CompletionRequest req;
  req.template_id = PromptId::OntologySeed;
  req.key = "seed";
  req.prompt = render(prompt_template(req.template_id),
                      {{"domain", std::string(domain)}, {"namespace", std::string(kLlmNs)}});
  const auto parsed = parse_turtle_response(provider.complete(req));
  const auto source = source_of(req.template_id, req.key);
  auto r = prune_to_declarations(parsed.graph, {}, source);
  std::vector<PruneRecord> pruned;
  note_repair(pruned, parsed, source);
  pruned.insert(pruned.end(), r.pruned.begin(), r.pruned.end());
  r.pruned = std::move(pruned);
  return r;
}

OntologyResult generate_ontology(Provider& provider, const rdf::Graph& seed, const std::vector<Document>& docs,
                                 StrategyKind strategy) {
  OntologyResult out{seed, {}};
  for (const auto& doc : docs) {
    CompletionRequest req;
    req.template_id = PromptId::OntologyExpand;
    req.key = doc.id;
    req.variant = variant_of(strategy);
    req.prompt = render(prompt_template(req.template_id),
                        {{"ontology", rdf::serialize_turtle(out.ontology)},
                         {"document", strategy_input(doc.text, doc.strategy(strategy))}});
    const auto parsed = parse_turtle_response(provider.complete(req));
    const auto source = source_of(req.template_id, req.key);
    note_repair(out.pruned, parsed, source);
    auto step = prune_to_declarations(parsed.graph, out.ontology, source);
    out.ontology = rdf::merge(out.ontology, step.ontology);
    out.pruned.insert(out.pruned.end(), step.pruned.begin(), step.pruned.end());
  }
  return out;
}

KgResult generate_kg(Provider& provider, const rdf::Graph& ontology, const Document& doc, StrategyKind strategy) {
  if (ontology.empty()) throw std::invalid_argument("knowledge graph generation needs a non-empty ontology");
  const auto input = strategy_input(doc.text, doc.strategy(strategy));
  if (trim(input).empty()) return {};

  CompletionRequest req;
  req.template_id = PromptId::KgGenerate;
  req.key = doc.id;
  req.variant = variant_of(strategy);
  req.prompt = render(prompt_template(req.template_id), {{"ontology", rdf::serialize_turtle(ontology)},
                                                         {"instance_namespace", std::string(kInstanceNs)},
                                                         {"doc_id", doc.id},
                                                         {"document", input}});
  const auto parsed = parse_turtle_response(provider.complete(req));
  const auto classes = declared_subjects(ontology, &kOwlClass);

  KgResult r;
  for (const auto& [prefix, ns] : parsed.graph.prefixes()) r.graph.bind_prefix(prefix, ns);
  for (const auto& t : parsed.graph) {
    if (t.predicate == kType && !classes.contains(t.object)) {
      r.rejects.push_back({doc.id, triple_line(t), "type " + rdf::to_ntriples(t.object) + " is not a declared class"});
    } else {
      r.graph.insert(t);
    }
  }
  return r;
}

rdf::Graph merge_kgs(const std::vector<rdf::Graph>& graphs) {
  rdf::Graph out;
  for (const auto& g : graphs) out = rdf::merge(out, g);
  return out;
}

std::vector<std::string> generate_cqs(Provider& provider, const rdf::Graph& ontology) {
  if (ontology.empty()) throw std::invalid_argument("competency question generation needs a non-empty ontology");
  CompletionRequest req;
  req.template_id = PromptId::CqGenerate;
  req.key = "ontology";
  req.prompt = render(prompt_template(req.template_id), {{"ontology", rdf::serialize_turtle(ontology)}});

  static const std::regex bullet(R"(^(\d+[.)]|[-*])\s*)");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& raw : lines_of(provider.complete(req))) {
    auto line = trim(std::regex_replace(trim(raw), bullet, ""));
    if (line.empty() || !line.ends_with('?')) continue;
    if (seen.insert(line).second) out.push_back(std::move(line));
  }
  return out;
}

CqAnswer answer_cq(Provider& provider, const RetrievalIndex& index, std::string_view question, const std::string& key,
                   StrategyKind strategy, std::size_t k) {
  CqAnswer a;
  a.question = std::string(question);
  if (index.empty()) {
    a.no_context = true;
    return a;
  }
  std::string context;
  for (const auto& hit : retrieve(index, question, [&](std::string_view t) { return provider.embed(t); }, k)) {
    a.chunk_ids.push_back(hit.chunk->id());
    context += "[" + hit.chunk->id() + "]\n" + hit.chunk->text + "\n\n";
  }
  CompletionRequest req;
  req.template_id = PromptId::CqAnswer;
  req.key = key;
  req.variant = variant_of(strategy);
  req.prompt = render(prompt_template(req.template_id), {{"context", context}, {"question", a.question}});
  a.answer = trim(provider.complete(req));
  return a;
}

}  // namespace legalkg::llm
