#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "legalkg/llm/generation.hpp"
#include "legalkg/llm/scores.hpp"

namespace legalkg::llm {

struct LlmRunOptions {
  std::filesystem::path docs_dir;
  std::filesystem::path score_sheet;
  StrategyKind strategy = StrategyKind::FullText;
  std::size_t chunk_size = kDefaultChunkSize;
  std::size_t chunk_overlap = kDefaultChunkOverlap;
  std::size_t top_k = kDefaultTopK;
  std::size_t max_parallel = 4;
  std::string domain = "court judgments on violence against women";

  // Bundled documents and score sheet under the data directory.
  static LlmRunOptions bundled();
};

struct AnswerRecord {
  std::string doc_id;
  CqAnswer answer;
};

struct LlmRunResult {
  rdf::Graph ontology;
  rdf::Graph kg;  // ontology plus the merged per-document graphs
  Census census;
  std::vector<PruneRecord> pruned;
  std::vector<Reject> rejects;
  std::vector<std::string> questions;
  std::vector<AnswerRecord> answers;
  CqScoreSheet scores;
  StrategyKind strategy = StrategyKind::FullText;
};

LlmRunResult run_llm_pipeline(Provider& provider, const LlmRunOptions& opts);

// Writes kg.ttl, ontology.ttl, rejects.jsonl, pruning.jsonl, answers.jsonl,
// scores.csv and report.txt into `out_dir`.
void write_llm_outputs(const LlmRunResult& r, const std::filesystem::path& out_dir);

std::string llm_report(const LlmRunResult& r);

// "mock" uses the bundled fixtures, "http" reads HttpProviderOptions::from_env().
std::unique_ptr<Provider> make_provider(std::string_view name);

}  // namespace legalkg::llm
