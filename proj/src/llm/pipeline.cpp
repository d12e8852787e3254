#include "legalkg/llm/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include <json.hpp>

#include "legalkg/data.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/mapping/vocabulary.hpp"
#include "legalkg/rdf/turtle.hpp"

namespace legalkg::llm {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void bind_llm_prefixes(rdf::Graph& g) {
  g.bind_prefix("llm", std::string(kLlmNs));
  g.bind_prefix("kg", "https://w3id.org/prejust4woman/llm/kg/");
  g.bind_prefix("owl", std::string(rdf::vocab::kOwl));
  g.bind_prefix("rdf", std::string(rdf::vocab::kRdf));
  g.bind_prefix("rdfs", std::string(rdf::vocab::kRdfs));
  g.bind_prefix("xsd", std::string(rdf::xsd::kNs));
}

std::string question_key(const std::string& doc_id, std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "q%02zu", n);
  return doc_id + "/" + buf;
}

template <class T>
std::string jsonl(const std::vector<T>& rows, auto&& to_json) {
  std::string out;
  for (const auto& r : rows) out += to_json(r).dump() + "\n";
  return out;
}

}  // namespace

LlmRunOptions LlmRunOptions::bundled() {
  LlmRunOptions o;
  o.docs_dir = data_path("llm/docs");
  o.score_sheet = data_path("llm/table2_scores.csv");
  return o;
}

LlmRunResult run_llm_pipeline(Provider& provider, const LlmRunOptions& opts) {
  const auto docs = load_documents(opts.docs_dir);
  if (docs.empty()) throw mapping::ConfigError("no documents in '" + opts.docs_dir.string() + "'");
  if (opts.max_parallel == 0) throw mapping::ConfigError("max_parallel must be at least 1");

  LlmRunResult r;
  r.strategy = opts.strategy;
  r.scores = CqScoreSheet::load(opts.score_sheet);

  auto seed = seed_ontology(provider, opts.domain);
  auto onto = generate_ontology(provider, seed.ontology, docs, opts.strategy);
  r.pruned = std::move(seed.pruned);
  r.pruned.insert(r.pruned.end(), onto.pruned.begin(), onto.pruned.end());
  r.ontology = std::move(onto.ontology);
  bind_llm_prefixes(r.ontology);

  std::vector<KgResult> per_doc(docs.size());
  for (std::size_t batch = 0; batch < docs.size(); batch += opts.max_parallel) {
    std::vector<std::future<KgResult>> running;
    const auto end = std::min(docs.size(), batch + opts.max_parallel);
    for (std::size_t i = batch; i < end; ++i) {
      running.push_back(std::async(std::launch::async, [&, i] {
        return generate_kg(provider, r.ontology, docs[i], opts.strategy);
      }));
    }
    for (std::size_t i = batch; i < end; ++i) per_doc[i] = running[i - batch].get();
  }

  std::vector<rdf::Graph> graphs{r.ontology};
  for (auto& kg : per_doc) {
    graphs.push_back(std::move(kg.graph));
    r.rejects.insert(r.rejects.end(), kg.rejects.begin(), kg.rejects.end());
  }
  r.kg = merge_kgs(graphs);
  bind_llm_prefixes(r.kg);
  r.census = declaration_census(r.kg);

  r.questions = generate_cqs(provider, r.ontology);
  const EmbedFn embed = [&](std::string_view t) { return provider.embed(t); };
  for (const auto& doc : docs) {
    const auto text = strategy_input(doc.text, doc.strategy(opts.strategy));
    const auto index = build_index(chunk_document(doc.id, text, opts.chunk_size, opts.chunk_overlap), embed);
    for (std::size_t q = 0; q < r.questions.size(); ++q) {
      r.answers.push_back({doc.id, answer_cq(provider, index, r.questions[q], question_key(doc.id, q + 1),
                                             opts.strategy, opts.top_k)});
    }
  }
  return r;
}

std::string llm_report(const LlmRunResult& r) {
  std::size_t no_context = 0;
  for (const auto& a : r.answers) no_context += a.answer.no_context;
  std::string out;
  out += "strategy: " + std::string(strategy_name(r.strategy)) + "\n";
  out += "ontology: " + std::to_string(r.census.classes) + " classes, " + std::to_string(r.census.object_properties) +
         " object properties, " + std::to_string(r.census.data_properties) + " data properties\n";
  out += "knowledge graph: " + std::to_string(r.kg.size()) + " triples\n";
  out += "quarantined type triples: " + std::to_string(r.rejects.size()) + "\n";
  out += "pruned ontology statements: " +
         std::to_string(std::count_if(r.pruned.begin(), r.pruned.end(), [](const auto& p) { return !p.triple.empty(); })) +
         "\n";
  out += "competency questions: " + std::to_string(r.questions.size()) + "\n";
  out += "answers: " + std::to_string(r.answers.size()) + " (" + std::to_string(no_context) + " without context)\n\n";
  out += score_report(r.scores);
  return out;
}

void write_llm_outputs(const LlmRunResult& r, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  ingestion::write_file(out_dir / "kg.ttl", rdf::serialize_turtle(r.kg));
  ingestion::write_file(out_dir / "ontology.ttl", rdf::serialize_turtle(r.ontology));
  ingestion::write_file(out_dir / "rejects.jsonl", jsonl(r.rejects, [](const Reject& x) {
                          return ordered_json{{"doc", x.doc_id}, {"triple", x.triple}, {"reason", x.reason}};
                        }));
  ingestion::write_file(out_dir / "pruning.jsonl", jsonl(r.pruned, [](const PruneRecord& x) {
                          return ordered_json{{"source", x.source}, {"triple", x.triple}, {"reason", x.reason}};
                        }));
  const std::string strategy(strategy_name(r.strategy));
  ingestion::write_file(out_dir / "answers.jsonl", jsonl(r.answers, [&](const AnswerRecord& x) {
                          return ordered_json{{"doc", x.doc_id},
                                              {"strategy", strategy},
                                              {"question", x.answer.question},
                                              {"answer", x.answer.answer},
                                              {"chunks", x.answer.chunk_ids},
                                              {"no_context", x.answer.no_context}};
                        }));
  ingestion::write_file(out_dir / "scores.csv", score_sheet_csv(r.scores));
  ingestion::write_file(out_dir / "report.txt", llm_report(r));
}

std::unique_ptr<Provider> make_provider(std::string_view name) {
  if (name == "mock") return std::make_unique<MockProvider>(data_path("llm/fixtures"));
  if (name == "http") return std::make_unique<HttpProvider>(HttpProviderOptions::from_env());
  throw mapping::ConfigError("unknown provider '" + std::string(name) + "' (expected mock or http)");
}

}  // namespace legalkg::llm
