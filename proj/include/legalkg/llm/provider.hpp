#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "legalkg/llm/retrieval.hpp"

namespace legalkg::llm {

enum class PromptId { OntologySeed, OntologyExpand, KgGenerate, CqGenerate, CqAnswer };

// Snake-case name, also the fixture subdirectory: "ontology_seed", "kg_generate", ...
std::string_view prompt_id_name(PromptId id) noexcept;

class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CompletionRequest {
  PromptId template_id = PromptId::OntologySeed;
  std::string key;      // document id, or "<doc>/qNN" for answers
  std::string variant;  // "" for full text, "subpart" for the sub-part strategy
  std::string prompt;
};

// Implementations must be callable from several threads at once.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual Embedding embed(std::string_view text) = 0;
  virtual std::string name() const = 0;
};

// Completions come from `<fixtures>/<template>/<key>.<variant>.txt`, falling
// back to `<fixtures>/<template>/<key>.txt`. Embeddings are mock_embed.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(std::filesystem::path fixtures_dir, std::size_t dimension = kMockDimension);

  std::string complete(const CompletionRequest& request) override;
  Embedding embed(std::string_view text) override { return mock_embed(text, dimension_); }
  std::string name() const override { return "mock"; }

  const std::filesystem::path& fixtures_dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::size_t dimension_;
};

struct HttpProviderOptions {
  std::string endpoint;  // base URL; requests go to <endpoint>/complete and <endpoint>/embed
  std::string token;     // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};

  // LEGALKG_LLM_ENDPOINT and LEGALKG_LLM_TOKEN.
  static HttpProviderOptions from_env();
};

// JSON over HTTP POST:
//   /complete  {"template","key","variant","prompt"} -> {"text": string}
//   /embed     {"text"}                              -> {"embedding": [number]}
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderOptions opts);

  std::string complete(const CompletionRequest& request) override;
  Embedding embed(std::string_view text) override;
  std::string name() const override { return "http"; }

 private:
  std::string post(const std::string& route, const std::string& body) const;

  HttpProviderOptions opts_;
  std::string origin_;
  std::string base_path_;
};

}  // namespace legalkg::llm
