#include "legalkg/llm/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace legalkg::llm {

Embedding mock_embed(std::string_view text, std::size_t dim) {
  Embedding v(dim, 0.0);
  auto flush = [&](std::string& word) {
    if (word.empty()) return;
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : word) {
      h ^= c;
      h *= 1099511628211ull;
    }
    v[h % dim] += 1.0;
    word.clear();
  };
  std::string word;
  for (const unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush(word);
    }
  }
  flush(word);

  double norm = 0.0;
  for (const double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

double cosine(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) throw std::invalid_argument("embedding dimensions differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void RetrievalIndex::add(TextChunk chunk, Embedding vector) {
  if (!entries_.empty() && vector.size() != dimension()) {
    throw std::invalid_argument("embedding dimension " + std::to_string(vector.size()) + " does not match index (" +
                                std::to_string(dimension()) + ")");
  }
  for (const double x : vector) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite embedding for chunk " + chunk.id());
  }
  entries_.push_back({std::move(chunk), std::move(vector)});
}

RetrievalIndex build_index(const std::vector<TextChunk>& chunks, const EmbedFn& embed) {
  RetrievalIndex index;
  for (const auto& c : chunks) index.add(c, embed(c.text));
  return index;
}

std::vector<Hit> retrieve(const RetrievalIndex& index, const Embedding& query, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<Hit> hits;
  hits.reserve(index.size());
  for (const auto& e : index.entries()) hits.push_back({&e.chunk, cosine(e.vector, query)});
  const auto n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(),
                    [](const Hit& a, const Hit& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return std::tie(a.chunk->doc_id, a.chunk->index) < std::tie(b.chunk->doc_id, b.chunk->index);
                    });
  hits.resize(n);
  return hits;
}

std::vector<Hit> retrieve(const RetrievalIndex& index, std::string_view query, const EmbedFn& embed, std::size_t k) {
  if (index.empty()) return {};
  return retrieve(index, embed(query), k);
}

}  // namespace legalkg::llm
