#include "legalkg/llm/chunking.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "legalkg/ingestion/corpus.hpp"
#include "legalkg/io_error.hpp"
#include "legalkg/mapping/vocabulary.hpp"

namespace legalkg::llm {

namespace fs = std::filesystem;
using mapping::ConfigError;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1));
}

std::string fold(std::string_view s) {
  std::string out = trim(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::optional<std::string> heading_of(std::string_view line) {
  if (!line.starts_with("## ")) return std::nullopt;
  return fold(line.substr(3));
}

}  // namespace

std::vector<TextChunk> chunk_document(std::string_view doc_id, std::string_view text, std::size_t size,
                                      std::size_t overlap) {
  if (size <= overlap) {
    throw ConfigError("chunk size (" + std::to_string(size) + ") must exceed the overlap (" +
                      std::to_string(overlap) + ")");
  }
  std::vector<TextChunk> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(start + size, text.size());
    out.push_back({std::string(doc_id), static_cast<int>(out.size()), std::string(text.substr(start, end - start)),
                   start, end});
    if (end == text.size()) break;
    start = end - overlap;
  }
  return out;
}

std::string_view strategy_name(StrategyKind k) noexcept {
  return k == StrategyKind::FullText ? "fulltext" : "subpart";
}

StrategyKind strategy_from_name(std::string_view name) {
  if (name == "fulltext") return StrategyKind::FullText;
  if (name == "subpart") return StrategyKind::SubPart;
  throw ConfigError("unknown input strategy '" + std::string(name) + "' (expected fulltext or subpart)");
}

InputStrategy InputStrategy::sub_part(std::vector<std::string> sections) {
  if (sections.empty()) throw ConfigError("the sub-part strategy needs at least one section");
  return {StrategyKind::SubPart, std::move(sections)};
}

InputStrategy Document::strategy(StrategyKind kind) const {
  if (kind == StrategyKind::FullText) return InputStrategy::full_text();
  if (section_selectors.empty()) throw ConfigError("document '" + id + "' has no section selector");
  return InputStrategy::sub_part(section_selectors);
}

std::string strategy_input(std::string_view text, const InputStrategy& strategy) {
  if (strategy.kind == StrategyKind::FullText) return std::string(text);

  std::vector<std::string> wanted;
  for (const auto& s : strategy.sections) wanted.push_back(fold(s));
  std::vector<bool> found(wanted.size(), false);

  std::string out;
  bool keep = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl + 1;
    const auto line = text.substr(pos, end - pos);
    if (auto h = heading_of(trim(line))) {
      const auto it = std::find(wanted.begin(), wanted.end(), *h);
      keep = it != wanted.end();
      if (keep) found[static_cast<std::size_t>(it - wanted.begin())] = true;
    }
    if (keep) out.append(line);
    pos = end;
  }
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (!found[i]) throw ConfigError("section '" + strategy.sections[i] + "' not found in the document");
  }
  return out;
}

Document load_document(const fs::path& text_file) {
  Document d;
  d.id = text_file.stem().string();
  d.text = ingestion::read_file(text_file);
  auto selector = text_file;
  selector.replace_extension(".sections");
  if (fs::exists(selector)) {
    std::istringstream in(ingestion::read_file(selector));
    for (std::string line; std::getline(in, line);) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (auto t = trim(line); !t.empty()) d.section_selectors.push_back(std::move(t));
    }
  }
  return d;
}

std::vector<Document> load_documents(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("document directory '" + dir.string() + "' not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  for (const auto& f : files) docs.push_back(load_document(f));
  return docs;
}

}  // namespace legalkg::llm
