#include "legalkg/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "legalkg/data.hpp"
#include "legalkg/endpoint/service.hpp"
#include "legalkg/identifiers/ecli.hpp"
#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/ingestion/fetch.hpp"
#include "legalkg/io_error.hpp"
#include "legalkg/llm/pipeline.hpp"
#include "legalkg/llm/prompts.hpp"
#include "legalkg/mapping/cq.hpp"
#include "legalkg/mapping/mapping.hpp"
#include "legalkg/nlp/pipeline.hpp"
#include "legalkg/rdf/turtle.hpp"
#include "legalkg/sparql/eval.hpp"
#include "legalkg/sparql/parser.hpp"
#include "legalkg/sparql/results.hpp"

namespace legalkg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Options shared by the subcommands. Empty means "not given".
struct Flags {
  std::string corpus;
  std::string manifest;
  std::string out;
  std::string format;
  std::string config;
  std::string provider;
  std::string strategy;
  std::string graph;
  std::string query;
  std::string query_file;
  std::string bind;
  std::string docs;
  std::string scores;
  std::string fixtures;
  std::string console;
  std::string input;
  long timeout_ms = 0;
};

// Settings from --config: {"vocabulary": {...}, "provider": {...}}.
struct FileConfig {
  mapping::VocabularyConfig vocabulary = mapping::VocabularyConfig::defaults();
  std::string provider;
  std::string strategy;
  std::string fixtures;
  std::string docs;
  std::string scores;
  std::string endpoint;
};

FileConfig load_config(const std::string& path) {
  FileConfig c;
  if (path.empty()) return c;
  if (fs::path(path).extension() == ".toml") {
    throw mapping::ConfigError("TOML configs are not supported; use JSON with the same keys");
  }
  std::string text;
  try {
    text = ingestion::read_file(path);
  } catch (const IoError& e) {
    throw mapping::ConfigError(e.what());
  }
  const auto j = json::parse(text, nullptr, false);
  if (!j.is_object()) throw mapping::ConfigError("config '" + path + "' is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "vocabulary") {
      c.vocabulary = mapping::VocabularyConfig::from_json(value.dump());
    } else if (key == "provider") {
      if (!value.is_object()) throw mapping::ConfigError("config: \"provider\" must be an object");
      for (const auto& [pk, pv] : value.items()) {
        if (!pv.is_string()) throw mapping::ConfigError("config: provider." + pk + " must be a string");
        const auto v = pv.get<std::string>();
        if (pk == "name") c.provider = v;
        else if (pk == "strategy") c.strategy = v;
        else if (pk == "fixtures") c.fixtures = v;
        else if (pk == "docs") c.docs = v;
        else if (pk == "scores") c.scores = v;
        else if (pk == "endpoint") c.endpoint = v;
        else throw mapping::ConfigError("config: unknown provider key '" + pk + "'");
      }
    } else {
      throw mapping::ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

const std::string& pick(const std::string& flag, const std::string& file) { return flag.empty() ? file : flag; }

fs::path manifest_path(const Flags& f) {
  if (!f.manifest.empty()) return f.manifest;
  if (!f.corpus.empty()) return fs::path(f.corpus) / "manifest.csv";
  return data_path("corpus/manifest.csv");
}

std::vector<ingestion::LoadedCase> load_cases(const Flags& f) {
  return ingestion::load_corpus(ingestion::CorpusManifest::load(manifest_path(f)));
}

std::string serialize_graph(const rdf::Graph& g, const std::string& format) {
  if (format.empty() || format == "ttl") return rdf::serialize_turtle(g);
  if (format == "nt") return rdf::serialize_ntriples(g);
  throw mapping::ConfigError("graph format must be ttl or nt, not '" + format + "'");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    ingestion::write_file(out_path, text);
  }
}

int cmd_ingest(const Flags& f, std::ostream& out) {
  const auto cases = load_cases(f);
  std::size_t warnings = 0;
  for (const auto& c : cases) {
    out << c.case_id << "\t" << identifiers::format_ecli(c.record.ecli) << "\t"
        << identifiers::format_date(c.record.date) << "\t" << c.record.document_url.value() << "\n";
    for (const auto& w : c.warnings) out << "  warning: " << w << "\n";
    warnings += c.warnings.size();
    if (!f.out.empty()) ingestion::write_file(fs::path(f.out) / (c.case_id + ".json"), ingestion::case_record_to_json(c.record) + "\n");
  }
  out << cases.size() << " cases loaded, " << warnings << " warnings\n";
  return kSuccess;
}

int cmd_build(const Flags& f, const FileConfig& cfg, std::ostream& out) {
  const auto kg = mapping::build_kg(load_cases(f), cfg.vocabulary);
  emit(serialize_graph(kg, f.format), f.out, out);
  return kSuccess;
}

int cmd_stats(const Flags& f, std::ostream& out) {
  if (f.graph.empty()) throw mapping::ConfigError("stats needs a graph file");
  out << mapping::kg_stats_json(mapping::kg_stats(rdf::load_graph(f.graph))) << "\n";
  return kSuccess;
}

int cmd_query(const Flags& f, std::ostream& out) {
  if (f.graph.empty()) throw mapping::ConfigError("query needs a graph file");
  if (f.query.empty() == f.query_file.empty()) throw mapping::ConfigError("give exactly one of --query or --query-file");
  const auto text = f.query.empty() ? ingestion::read_file(f.query_file) : f.query;
  const auto g = rdf::load_graph(f.graph);
  sparql::EvalOptions opts;
  if (f.timeout_ms > 0) opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(f.timeout_ms);
  const auto result = sparql::run_query(text, g, opts);
  if (f.format.empty() || f.format == "json") {
    emit(sparql::serialize_results_json(result) + "\n", f.out, out);
  } else if (f.format == "csv") {
    emit(sparql::serialize_results_csv(result), f.out, out);
  } else {
    throw mapping::ConfigError("result format must be json or csv, not '" + f.format + "'");
  }
  return kSuccess;
}

int cmd_serve(const Flags& f, std::ostream& out) {
  auto cfg = endpoint::ServiceConfig::from_env();
  if (!f.bind.empty()) cfg.set_bind(f.bind);
  if (!f.graph.empty()) cfg.graph_path = f.graph;
  if (!f.console.empty()) cfg.console_dir = f.console;
  if (f.timeout_ms > 0) cfg.request_timeout = std::chrono::milliseconds(f.timeout_ms);
  auto service = endpoint::load_service(cfg);
  endpoint::Server server(service);
  const int port = server.bind();
  out << "serving " << service->snapshot().size() << " triples on http://" << cfg.host << ":" << port << "/"
      << (service->has_console() ? "" : " (built-in query form)") << std::endl;
  server.listen();
  return kSuccess;
}

int cmd_cq_validate(const Flags& f, const FileConfig& cfg, std::ostream& out) {
  const auto cases = load_cases(f);
  const auto report = mapping::cq_validate(mapping::build_kg(cases, cfg.vocabulary), cases, cfg.vocabulary);
  emit(report.to_text(), f.out, out);
  return report.all_passed() ? kSuccess : kValidationFailure;
}

int cmd_llm_run(const Flags& f, const FileConfig& cfg, std::ostream& out) {
  auto opts = llm::LlmRunOptions::bundled();
  if (const auto& d = pick(f.docs, cfg.docs); !d.empty()) opts.docs_dir = d;
  if (const auto& s = pick(f.scores, cfg.scores); !s.empty()) opts.score_sheet = s;
  if (const auto& s = pick(f.strategy, cfg.strategy); !s.empty()) opts.strategy = llm::strategy_from_name(s);

  const auto provider_name = pick(f.provider, cfg.provider).empty() ? std::string("mock") : pick(f.provider, cfg.provider);
  std::unique_ptr<llm::Provider> provider;
  if (provider_name == "mock") {
    const auto& fx = pick(f.fixtures, cfg.fixtures);
    provider = std::make_unique<llm::MockProvider>(fx.empty() ? data_path("llm/fixtures") : fs::path(fx));
  } else if (provider_name == "http") {
    auto http = llm::HttpProviderOptions::from_env();
    if (!cfg.endpoint.empty() && http.endpoint.empty()) http.endpoint = cfg.endpoint;
    provider = std::make_unique<llm::HttpProvider>(http);
  } else {
    provider = llm::make_provider(provider_name);
  }

  const auto result = llm::run_llm_pipeline(*provider, opts);
  const fs::path out_dir = f.out.empty() ? fs::path("llm-out") : fs::path(f.out);
  llm::write_llm_outputs(result, out_dir);
  out << llm::llm_report(result) << "outputs written to " << out_dir.string() << "\n";
  return kSuccess;
}

int cmd_nlp_run(const Flags& f, const FileConfig& cfg, std::ostream& out) {
  if (f.input.empty()) throw mapping::ConfigError("nlp-run needs a text file");
  const auto r = nlp::run_pipeline(ingestion::read_file(f.input), cfg.vocabulary);
  std::string triples;
  for (const auto& t : r.triples) triples += t.subj + "\t" + t.verb + "\t" + t.obj + "\n";
  if (f.out.empty()) {
    out << triples << r.triples.size() << " triples from " << r.sentences.size() << " sentences\n";
  } else {
    ingestion::write_file(f.out, serialize_graph(r.graph, f.format));
    out << triples << r.triples.size() << " triples written to " << f.out << "\n";
  }
  return kSuccess;
}

bool is_io(const std::exception& e) {
  return dynamic_cast<const IoError*>(&e) || dynamic_cast<const ingestion::FetchError*>(&e) ||
         dynamic_cast<const llm::ProviderError*>(&e) || dynamic_cast<const fs::filesystem_error*>(&e);
}

bool is_config(const std::exception& e) {
  return dynamic_cast<const mapping::ConfigError*>(&e) || dynamic_cast<const llm::TemplateError*>(&e) ||
         dynamic_cast<const CLI::Error*>(&e);
}

std::optional<int> own_code(const std::exception& e) {
  if (is_io(e)) return kIoFailure;
  if (is_config(e)) return kConfigError;
  if (dynamic_cast<const ingestion::IngestError*>(&e) || dynamic_cast<const rdf::SyntaxError*>(&e) ||
      dynamic_cast<const sparql::QueryError*>(&e) || dynamic_cast<const sparql::TimeoutError*>(&e) ||
      dynamic_cast<const llm::ScoreSheetError*>(&e) || dynamic_cast<const llm::ResponseFormatError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const rdf::StructuralError*>(&e)) {
    return kValidationFailure;
  }
  return std::nullopt;
}

void walk(const std::exception& e, const std::function<void(const std::exception&)>& visit) {
  visit(e);
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    walk(inner, visit);
  } catch (...) {
  }
}

}  // namespace

int exit_code_for(const std::exception& e) {
  std::optional<int> code;
  walk(e, [&](const std::exception& x) {
    if (auto c = own_code(x)) code = c;
  });
  return code.value_or(kIoFailure);
}

std::string cause_chain(const std::exception& e) {
  std::string out;
  walk(e, [&](const std::exception& x) {
    out += out.empty() ? x.what() : std::string("\n  caused by: ") + x.what();
  });
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Legal knowledge graph toolkit: ingest ECHR metadata, build and query the KG, run the text pipelines"};
  app.require_subcommand(1);
  Flags f;

  auto corpus_flags = [&](CLI::App* c) {
    c->add_option("--corpus", f.corpus, "Corpus directory containing manifest.csv");
    c->add_option("--manifest", f.manifest, "Corpus manifest CSV (default: bundled fixtures)");
  };
  auto config_flag = [&](CLI::App* c) { c->add_option("--config", f.config, "JSON config file"); };

  auto* ingest = app.add_subcommand("ingest", "Parse the corpus and report the records");
  corpus_flags(ingest);
  ingest->add_option("--out", f.out, "Directory for one normalised JSON record per case");

  auto* build = app.add_subcommand("build", "Build the knowledge graph from the corpus");
  corpus_flags(build);
  config_flag(build);
  build->add_option("--out", f.out, "Output file (stdout when omitted)");
  build->add_option("--format", f.format, "ttl or nt")->check(CLI::IsMember({"ttl", "nt"}));

  auto* stats = app.add_subcommand("stats", "Print triple, predicate and entity counts of a graph file");
  stats->add_option("graph", f.graph, "Turtle or N-Triples file")->required();

  auto* query = app.add_subcommand("query", "Evaluate a SPARQL query against a graph file");
  query->add_option("graph", f.graph, "Turtle or N-Triples file")->required();
  query->add_option("--query,-q", f.query, "Query text");
  query->add_option("--query-file", f.query_file, "File holding the query");
  query->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  query->add_option("--out", f.out, "Output file (stdout when omitted)");
  query->add_option("--timeout", f.timeout_ms, "Evaluation timeout in milliseconds");

  auto* serve = app.add_subcommand("serve", "Serve the SPARQL endpoint");
  serve->add_option("--graph", f.graph, "Graph file (default: $LEGALKG_GRAPH)");
  serve->add_option("--bind", f.bind, "host:port (default: $LEGALKG_BIND or 127.0.0.1:8080)");
  serve->add_option("--console", f.console, "Directory of the console bundle");
  serve->add_option("--timeout", f.timeout_ms, "Per-query timeout in milliseconds");

  auto* cqv = app.add_subcommand("cq-validate", "Check the 13 competency queries against the source records");
  corpus_flags(cqv);
  config_flag(cqv);
  cqv->add_option("--out", f.out, "Report file (stdout when omitted)");

  auto* llm_run = app.add_subcommand("llm-run", "Run the LLM construction pipeline");
  config_flag(llm_run);
  llm_run->add_option("--provider", f.provider, "mock or http")->check(CLI::IsMember({"mock", "http"}));
  llm_run->add_option("--strategy", f.strategy, "fulltext or subpart")->check(CLI::IsMember({"fulltext", "subpart"}));
  llm_run->add_option("--docs", f.docs, "Directory of source documents (*.txt, optional *.sections)");
  llm_run->add_option("--scores", f.scores, "Manual CQ score sheet CSV");
  llm_run->add_option("--fixtures", f.fixtures, "Mock provider fixture directory");
  llm_run->add_option("--out", f.out, "Output directory (default: llm-out)");

  auto* nlp_run = app.add_subcommand("nlp-run", "Extract subject-verb-object triples from a text file");
  config_flag(nlp_run);
  nlp_run->add_option("input", f.input, "UTF-8 text file")->required();
  nlp_run->add_option("--out", f.out, "Write the RDF graph here");
  nlp_run->add_option("--format", f.format, "ttl or nt")->check(CLI::IsMember({"ttl", "nt"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kConfigError;
  }

  const auto* cmd = app.get_subcommands().front();
  const std::string stage = cmd->get_name();
  try {
    const auto cfg = load_config(f.config);
    if (stage == "ingest") return cmd_ingest(f, out);
    if (stage == "build") return cmd_build(f, cfg, out);
    if (stage == "stats") return cmd_stats(f, out);
    if (stage == "query") return cmd_query(f, out);
    if (stage == "serve") return cmd_serve(f, out);
    if (stage == "cq-validate") return cmd_cq_validate(f, cfg, out);
    if (stage == "llm-run") return cmd_llm_run(f, cfg, out);
    return cmd_nlp_run(f, cfg, out);
  } catch (const std::exception& e) {
    err << "error [" << stage << "]: " << cause_chain(e) << "\n";
    return exit_code_for(e);
  }
}

}  // namespace legalkg::cli
