#include "legalkg/nlp/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "legalkg/data.hpp"
#include "legalkg/io_error.hpp"

namespace legalkg::nlp {
namespace {

constexpr std::array<std::string_view, 8> kPosNames = {"Noun",    "Verb",       "Adjective",   "Adverb",
                                                       "Pronoun", "Determiner", "Preposition", "Other"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1));
}

// Non-empty, non-comment lines of a resource file, split on the first tab.
std::vector<std::pair<std::string, std::string>> read_entries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read NLP resource " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tab = line.find('\t');
    std::string key = lower(trim(line.substr(0, tab)));
    if (key.empty()) continue;
    out.emplace_back(std::move(key), tab == std::string::npos ? std::string{} : trim(line.substr(tab + 1)));
  }
  return out;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) { return std::any_of(s.begin(), s.end(), is_vowel); }

bool ends_with_double_consonant(std::string_view s) {
  if (s.size() < 2) return false;
  const char c = s.back();
  return c == s[s.size() - 2] && std::isalpha(static_cast<unsigned char>(c)) && !is_vowel(c) && c != 'l' &&
         c != 's' && c != 'z';
}

// Strips `suffix` when a stem with a vowel and at least three letters remains.
std::optional<std::string> strip_inflection(std::string_view word, std::string_view suffix) {
  if (!word.ends_with(suffix)) return std::nullopt;
  std::string stem(word.substr(0, word.size() - suffix.size()));
  if (stem.size() < 3 || !has_vowel(stem)) return std::nullopt;
  if (ends_with_double_consonant(stem)) stem.pop_back();
  return stem;
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

// Drops ASCII punctuation, keeping hyphens and apostrophes between word characters.
std::string strip_punctuation(std::string_view raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto c = static_cast<unsigned char>(raw[i]);
    if (is_word_char(c)) {
      out.push_back(static_cast<char>(c));
    } else if ((c == '-' || c == '\'') && !out.empty() && i + 1 < raw.size() &&
               is_word_char(static_cast<unsigned char>(raw[i + 1]))) {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '?' || c == '!') && i + 1 < text.size() &&
        std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      out.push_back(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

bool is_nominal(Pos p) { return p == Pos::Noun || p == Pos::Pronoun; }

}  // namespace

std::string_view pos_name(Pos p) noexcept { return kPosNames[static_cast<std::size_t>(p)]; }

Pos pos_from_name(std::string_view name) {
  const auto folded = lower(name);
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (lower(kPosNames[i]) == folded) return static_cast<Pos>(i);
  }
  throw std::invalid_argument("unknown part of speech '" + std::string(name) + "'");
}

Resources Resources::load(const std::filesystem::path& dir) {
  Resources r;
  for (auto& [word, _] : read_entries(dir / "stopwords.txt")) r.stopwords.insert(word);
  for (auto& [surface, lemma] : read_entries(dir / "lemma_exceptions.tsv")) {
    if (lemma.empty()) throw std::runtime_error("lemma exception '" + surface + "' has no lemma");
    r.lemma_exceptions[surface] = lower(lemma);
  }
  for (auto& [word, tag] : read_entries(dir / "pos_lexicon.tsv")) r.lexicon[word] = pos_from_name(tag);
  return r;
}

const Resources& bundled_resources() {
  static const Resources res = Resources::load(data_path("nlp"));
  return res;
}

std::string lemmatize(std::string_view word, const Resources& res) {
  const std::string w = lower(word);
  if (auto it = res.lemma_exceptions.find(w); it != res.lemma_exceptions.end()) return it->second;
  if (w.size() > 4 && w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.ends_with("sses")) return w.substr(0, w.size() - 2);
  if (auto stem = strip_inflection(w, "ing")) return *stem;
  if (auto stem = strip_inflection(w, "ed")) return *stem;
  if (w.size() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

std::vector<Sentence> preprocess(std::string_view text, const Resources& res) {
  std::vector<Sentence> out;
  int sentence_index = 0;
  for (const auto sentence : split_sentences(text)) {
    Sentence tokens;
    std::istringstream words{std::string(sentence)};
    std::string raw;
    int token_index = 0;
    while (words >> raw) {
      std::string surface = strip_punctuation(raw);
      if (surface.empty()) continue;
      const int index = token_index++;
      if (res.stopwords.contains(lower(surface))) continue;
      Token t;
      t.lemma = lemmatize(surface, res);
      t.surface = std::move(surface);
      t.sentence_index = sentence_index;
      t.token_index = index;
      tokens.push_back(std::move(t));
    }
    if (token_index == 0) continue;
    if (!tokens.empty()) out.push_back(std::move(tokens));
    ++sentence_index;
  }
  return out;
}

Pos tag_word(std::string_view lemma, std::string_view surface, const Resources& res) {
  for (const auto& key : {lower(surface), std::string(lemma)}) {
    if (auto it = res.lexicon.find(key); it != res.lexicon.end()) return it->second;
  }
  const std::string w = lower(surface);
  if (w.ends_with("ly")) return Pos::Adverb;
  if (w.ends_with("tion") || w.ends_with("ment") || w.ends_with("ity")) return Pos::Noun;
  if (w.ends_with("ize") || w.ends_with("ate")) return Pos::Verb;
  return Pos::Noun;
}

Sentence pos_tag(Sentence tokens, const Resources& res) {
  for (auto& t : tokens) t.pos = tag_word(t.lemma, t.surface, res);
  return tokens;
}

std::vector<SvoTriple> extract_svo(const std::vector<Sentence>& tagged) {
  std::vector<SvoTriple> out;
  for (const auto& sentence : tagged) {
    for (std::size_t v = 0; v < sentence.size(); ++v) {
      if (sentence[v].pos != Pos::Verb) continue;
      const Token* subj = nullptr;
      for (std::size_t i = v; i-- > 0;) {
        if (is_nominal(sentence[i].pos)) {
          subj = &sentence[i];
          break;
        }
      }
      const Token* obj = nullptr;
      for (std::size_t i = v + 1; i < sentence.size(); ++i) {
        if (is_nominal(sentence[i].pos)) {
          obj = &sentence[i];
          break;
        }
      }
      if (subj && obj) out.push_back({subj->lemma, sentence[v].lemma, obj->lemma, sentence[v].sentence_index});
    }
  }
  return out;
}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

rdf::Graph svo_to_rdf(const std::vector<SvoTriple>& triples, const mapping::VocabularyConfig& cfg) {
  rdf::Graph g;
  for (const auto& t : triples) {
    g.insert(rdf::Triple(cfg.custom(percent_encode(t.subj)), cfg.custom(percent_encode(t.verb)),
                         cfg.custom(percent_encode(t.obj))));
  }
  return g;
}

NlpResult run_pipeline(std::string_view text, const mapping::VocabularyConfig& cfg, const Resources& res) {
  NlpResult r;
  for (auto& s : preprocess(text, res)) r.sentences.push_back(pos_tag(std::move(s), res));
  r.triples = extract_svo(r.sentences);
  r.graph = svo_to_rdf(r.triples, cfg);
  return r;
}

}  // namespace legalkg::nlp
