#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "legalkg/llm/chunking.hpp"

namespace legalkg::llm {

using Embedding = std::vector<double>;
using EmbedFn = std::function<Embedding(std::string_view)>;

inline constexpr std::size_t kMockDimension = 256;
inline constexpr std::size_t kDefaultTopK = 4;

// Hashed bag of words: lowercase alphanumeric runs, FNV-1a into `dim` buckets,
// L2-normalized. Text without words maps to the zero vector.
Embedding mock_embed(std::string_view text, std::size_t dim = kMockDimension);

// 0 when either vector is zero. Throws std::invalid_argument on a size mismatch.
double cosine(const Embedding& a, const Embedding& b);

struct IndexEntry {
  TextChunk chunk;
  Embedding vector;
};

class RetrievalIndex {
 public:
  void add(TextChunk chunk, Embedding vector);
  const std::vector<IndexEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t dimension() const noexcept { return entries_.empty() ? 0 : entries_.front().vector.size(); }

 private:
  std::vector<IndexEntry> entries_;
};

RetrievalIndex build_index(const std::vector<TextChunk>& chunks, const EmbedFn& embed);

struct Hit {
  const TextChunk* chunk = nullptr;
  double similarity = 0.0;
};

// Top min(k, size) entries by cosine similarity, ties broken by (doc id, index).
std::vector<Hit> retrieve(const RetrievalIndex& index, const Embedding& query, std::size_t k = kDefaultTopK);
std::vector<Hit> retrieve(const RetrievalIndex& index, std::string_view query, const EmbedFn& embed,
                          std::size_t k = kDefaultTopK);

}  // namespace legalkg::llm
