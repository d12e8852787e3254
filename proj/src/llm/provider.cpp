#include "legalkg/llm/provider.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "legalkg/ingestion/fetch.hpp"

namespace legalkg::llm {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view prompt_id_name(PromptId id) noexcept {
  static constexpr std::array<std::string_view, 5> kNames = {"ontology_seed", "ontology_expand", "kg_generate",
                                                             "cq_generate", "cq_answer"};
  return kNames[static_cast<std::size_t>(id)];
}

MockProvider::MockProvider(fs::path fixtures_dir, std::size_t dimension)
    : dir_(std::move(fixtures_dir)), dimension_(dimension) {
  if (!fs::is_directory(dir_)) throw ProviderError("fixture directory '" + dir_.string() + "' not found");
  if (dimension_ == 0) throw ProviderError("embedding dimension must be positive");
}

std::string MockProvider::complete(const CompletionRequest& request) {
  const fs::path base = dir_ / std::string(prompt_id_name(request.template_id));
  std::vector<fs::path> candidates;
  if (!request.variant.empty()) candidates.push_back(base / (request.key + "." + request.variant + ".txt"));
  candidates.push_back(base / (request.key + ".txt"));
  for (const auto& p : candidates) {
    std::ifstream in(p, std::ios::binary);
    if (!in) continue;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  throw ProviderError("no mock response for " + std::string(prompt_id_name(request.template_id)) + "/" +
                      request.key + " (looked for " + candidates.back().string() + ")");
}

HttpProviderOptions HttpProviderOptions::from_env() {
  HttpProviderOptions opts;
  if (const char* e = std::getenv("LEGALKG_LLM_ENDPOINT")) opts.endpoint = e;
  if (const char* t = std::getenv("LEGALKG_LLM_TOKEN")) opts.token = t;
  return opts;
}

HttpProvider::HttpProvider(HttpProviderOptions opts) : opts_(std::move(opts)) {
  if (opts_.endpoint.empty()) throw ProviderError("no LLM endpoint configured (set LEGALKG_LLM_ENDPOINT)");
  try {
    auto parts = ingestion::split_url(opts_.endpoint);
    origin_ = parts.origin;
    base_path_ = parts.path;
  } catch (const ingestion::FetchError& e) {
    throw ProviderError(e.what());
  }
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
}

std::string HttpProvider::post(const std::string& route, const std::string& body) const {
  httplib::Client client(origin_);
  client.set_connection_timeout(opts_.timeout);
  client.set_read_timeout(opts_.timeout);
  httplib::Headers headers;
  if (!opts_.token.empty()) headers.emplace("Authorization", "Bearer " + opts_.token);
  const auto path = base_path_ + route;
  auto res = client.Post(path, headers, body, "application/json");
  if (!res) throw ProviderError("LLM request to " + origin_ + path + " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError("LLM request to " + origin_ + path + " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

std::string HttpProvider::complete(const CompletionRequest& request) {
  const json body = {{"template", prompt_id_name(request.template_id)},
                     {"key", request.key},
                     {"variant", request.variant},
                     {"prompt", request.prompt}};
  const auto reply = json::parse(post("/complete", body.dump()), nullptr, false);
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw ProviderError("completion reply lacks a string \"text\" member");
  }
  return reply["text"].get<std::string>();
}

Embedding HttpProvider::embed(std::string_view text) {
  const json body = {{"text", text}};
  const auto reply = json::parse(post("/embed", body.dump()), nullptr, false);
  if (!reply.is_object() || !reply.contains("embedding") || !reply["embedding"].is_array()) {
    throw ProviderError("embedding reply lacks an \"embedding\" array");
  }
  Embedding v;
  for (const auto& x : reply["embedding"]) {
    if (!x.is_number()) throw ProviderError("embedding contains a non-number");
    v.push_back(x.get<double>());
  }
  return v;
}

}  // namespace legalkg::llm
