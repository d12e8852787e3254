#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "legalkg/llm/provider.hpp"

namespace legalkg::llm {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PromptTemplate {
  enum class Mode { ZeroShot, FewShot };

  PromptId id = PromptId::OntologySeed;
  std::string body;  // placeholders are {{name}}; {{examples}} is filled from few_shot_examples
  Mode mode = Mode::ZeroShot;
  std::vector<std::pair<std::string, std::string>> few_shot_examples;  // (input, output)
};

const PromptTemplate& prompt_template(PromptId id);

// Throws TemplateError for a placeholder without a value, or a few-shot
// template without examples.
std::string render(const PromptTemplate& t, const std::map<std::string, std::string>& values);

}  // namespace legalkg::llm
