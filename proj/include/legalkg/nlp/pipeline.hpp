#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "legalkg/mapping/vocabulary.hpp"
#include "legalkg/rdf/graph.hpp"

namespace legalkg::nlp {

enum class Pos { Noun, Verb, Adjective, Adverb, Pronoun, Determiner, Preposition, Other };

std::string_view pos_name(Pos p) noexcept;
// Accepts the names produced by pos_name, case-insensitively. Throws std::invalid_argument.
Pos pos_from_name(std::string_view name);

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Noun;
  int sentence_index = 0;
  int token_index = 0;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct SvoTriple {
  std::string subj;
  std::string verb;
  std::string obj;
  int sentence_index = 0;

  bool operator==(const SvoTriple&) const = default;
};

// Stopword list, lemma exceptions and POS lexicon. Each file is plain text,
// one entry per line, '#' starts a comment:
//   stopwords.txt        word
//   lemma_exceptions.tsv surface<TAB>lemma
//   pos_lexicon.tsv      word<TAB>Tag
struct Resources {
  std::set<std::string> stopwords;
  std::map<std::string, std::string> lemma_exceptions;
  std::map<std::string, Pos> lexicon;

  static Resources load(const std::filesystem::path& dir);
};

// Loaded once from <data dir>/nlp.
const Resources& bundled_resources();

std::string lemmatize(std::string_view word, const Resources& res = bundled_resources());

// Sentences split on . ? ! followed by whitespace; punctuation stripped,
// lowercased lemmas, stopwords dropped. Sentences left empty are omitted.
std::vector<Sentence> preprocess(std::string_view text, const Resources& res = bundled_resources());

Pos tag_word(std::string_view lemma, std::string_view surface, const Resources& res = bundled_resources());
Sentence pos_tag(Sentence tokens, const Resources& res = bundled_resources());

// For each verb: nearest noun/pronoun before it and nearest one after it.
std::vector<SvoTriple> extract_svo(const std::vector<Sentence>& tagged);

std::string percent_encode(std::string_view text);
rdf::Graph svo_to_rdf(const std::vector<SvoTriple>& triples,
                      const mapping::VocabularyConfig& cfg = mapping::VocabularyConfig::defaults());

struct NlpResult {
  std::vector<Sentence> sentences;
  std::vector<SvoTriple> triples;
  rdf::Graph graph;
};

NlpResult run_pipeline(std::string_view text, const mapping::VocabularyConfig& cfg = mapping::VocabularyConfig::defaults(),
                       const Resources& res = bundled_resources());

}  // namespace legalkg::nlp
