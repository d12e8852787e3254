#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace legalkg::llm {

// Offsets are byte positions in the source text, [start, end).
struct TextChunk {
  std::string doc_id;
  int index = 0;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  std::string id() const { return doc_id + "#" + std::to_string(index); }
  bool operator==(const TextChunk&) const = default;
};

inline constexpr std::size_t kDefaultChunkSize = 1000;
inline constexpr std::size_t kDefaultChunkOverlap = 200;

// Throws mapping::ConfigError when size <= overlap.
std::vector<TextChunk> chunk_document(std::string_view doc_id, std::string_view text,
                                      std::size_t size = kDefaultChunkSize,
                                      std::size_t overlap = kDefaultChunkOverlap);

enum class StrategyKind { FullText, SubPart };

std::string_view strategy_name(StrategyKind k) noexcept;
// "fulltext" or "subpart"; throws mapping::ConfigError otherwise.
StrategyKind strategy_from_name(std::string_view name);

struct InputStrategy {
  StrategyKind kind = StrategyKind::FullText;
  std::vector<std::string> sections;  // headings kept by SubPart, never empty for it

  static InputStrategy full_text() { return {}; }
  static InputStrategy sub_part(std::vector<std::string> sections);
};

// A source document. Headings are lines of the form "## NAME"; the optional
// selector file `<id>.sections` next to the text lists the headings to keep.
struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> section_selectors;

  InputStrategy strategy(StrategyKind kind) const;
};

// Text the strategy exposes: the whole document, or the selected sections in
// document order (heading lines included). Unknown headings raise ConfigError.
std::string strategy_input(std::string_view text, const InputStrategy& strategy);

Document load_document(const std::filesystem::path& text_file);
// Every *.txt file of `dir`, sorted by id.
std::vector<Document> load_documents(const std::filesystem::path& dir);

}  // namespace legalkg::llm
