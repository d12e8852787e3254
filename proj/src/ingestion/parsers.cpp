#include "legalkg/ingestion/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include <json.hpp>

namespace legalkg::ingestion {

namespace {

using identifiers::ApplicationNumber;
using identifiers::DocumentType;
using identifiers::EcliId;

enum class Field {
  Title,
  Ecli,
  DocType,
  Date,
  ApplicationNumbers,
  Importance,
  RespondentStates,
  ConventionArticles,
  Unanimous,
  Language,
  Conclusion,
  References,
  Contributors,
  AccessRights,
  DocumentUrl,
};

std::string fold(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (const char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  while (!out.empty() && (out.back() == ':' || out.back() == ' ')) out.pop_back();
  return out;
}

std::string collapse(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (const char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

// Field-name aliases for the HUDOC "Case Details" labels, keyed by folded label.
const std::map<std::string, Field>& html_aliases() {
  static const std::map<std::string, Field> aliases = {
      {"title", Field::Title},
      {"case title", Field::Title},
      {"document title", Field::Title},
      {"ecli", Field::Ecli},
      {"document type", Field::DocType},
      {"doc type", Field::DocType},
      {"type", Field::DocType},
      {"date", Field::Date},
      {"judgment date", Field::Date},
      {"judgement date", Field::Date},
      {"decision date", Field::Date},
      {"application number", Field::ApplicationNumbers},
      {"application number(s)", Field::ApplicationNumbers},
      {"application numbers", Field::ApplicationNumbers},
      {"application no.", Field::ApplicationNumbers},
      {"app. no.", Field::ApplicationNumbers},
      {"app. no(s).", Field::ApplicationNumbers},
      {"importance level", Field::Importance},
      {"importance", Field::Importance},
      {"respondent state", Field::RespondentStates},
      {"respondent state(s)", Field::RespondentStates},
      {"respondent states", Field::RespondentStates},
      {"defendant state", Field::RespondentStates},
      {"article", Field::ConventionArticles},
      {"article(s)", Field::ConventionArticles},
      {"articles", Field::ConventionArticles},
      {"convention article", Field::ConventionArticles},
      {"convention article(s)", Field::ConventionArticles},
      {"convention articles", Field::ConventionArticles},
      {"unanimous", Field::Unanimous},
      {"unanimous decision", Field::Unanimous},
      {"unanimity", Field::Unanimous},
      {"language", Field::Language},
      {"language(s)", Field::Language},
      {"conclusion", Field::Conclusion},
      {"conclusion(s)", Field::Conclusion},
      {"conclusions", Field::Conclusion},
      {"abstract", Field::Conclusion},
      {"references", Field::References},
      {"reference", Field::References},
      {"strasbourg case-law", Field::References},
      {"domestic law", Field::References},
      {"international law", Field::References},
      {"representative", Field::Contributors},
      {"representative(s)", Field::Contributors},
      {"representatives", Field::Contributors},
      {"contributor", Field::Contributors},
      {"contributors", Field::Contributors},
      {"access rights", Field::AccessRights},
      {"access", Field::AccessRights},
      {"document url", Field::DocumentUrl},
      {"url", Field::DocumentUrl},
      {"link", Field::DocumentUrl},
  };
  return aliases;
}

bool is_multi_valued(Field f) {
  switch (f) {
    case Field::ApplicationNumbers:
    case Field::RespondentStates:
    case Field::ConventionArticles:
    case Field::References:
    case Field::Contributors:
      return true;
    default:
      return false;
  }
}

const char* field_name(Field f) {
  switch (f) {
    case Field::Title: return "Title";
    case Field::Ecli: return "ECLI";
    case Field::DocType: return "Document Type";
    case Field::Date: return "Date";
    case Field::ApplicationNumbers: return "Application Number";
    case Field::Importance: return "Importance Level";
    case Field::RespondentStates: return "Respondent State";
    case Field::ConventionArticles: return "Article";
    case Field::Unanimous: return "Unanimous";
    case Field::Language: return "Language";
    case Field::Conclusion: return "Conclusion";
    case Field::References: return "References";
    case Field::Contributors: return "Representative";
    case Field::AccessRights: return "Access Rights";
    case Field::DocumentUrl: return "Document URL";
  }
  return "?";
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  auto num = [](std::string_view t, int& out) {
    if (t.empty()) return false;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc{} && p == t.data() + t.size();
  };
  int y = 0, m = 0, d = 0;
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d)) return std::nullopt;
  } else if (s.size() == 10 && (s[2] == '/' || s[2] == '.') && s[5] == s[2]) {
    if (!num(s.substr(0, 2), d) || !num(s.substr(3, 2), m) || !num(s.substr(6, 4), y)) return std::nullopt;
  } else {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

DocumentType parse_doc_type(std::string_view raw) {
  const std::string f = fold(raw);
  if (f == "jud" || f == "judgment" || f == "judgement") return DocumentType::judgment();
  if (f == "dec" || f == "decision") return DocumentType::decision();
  std::string code;
  for (const char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) code += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  try {
    return DocumentType::from_code(code);
  } catch (const identifiers::EcliError&) {
    throw IngestError("unrecognised document type '" + std::string(raw) + "'");
  }
}

std::optional<bool> parse_bool(std::string_view raw) {
  const std::string f = fold(raw);
  if (f == "yes" || f == "true" || f == "unanimous" || f == "unanimously") return true;
  if (f == "no" || f == "false" || f == "by majority" || f == "majority") return false;
  return std::nullopt;
}

// Collects raw string values per field and assembles a validated CaseRecord.
class RecordBuilder {
 public:
  explicit RecordBuilder(const ParseOptions& opts) : opts_(opts) {}

  void warn(std::string msg) {
    if (opts_.warnings != nullptr) opts_.warnings->push_back(std::move(msg));
  }

  void set(Field f, std::string value) {
    auto& slot = values_[f];
    if (!is_multi_valued(f) && !slot.empty()) {
      warn(std::string("duplicate field '") + field_name(f) + "'; last value kept");
      slot.clear();
    }
    slot.push_back(std::move(value));
  }

  void set_unanimous(std::optional<bool> v) { unanimous_ = v; }

  CaseRecord build() {
    const std::string ecli_text = single(Field::Ecli);
    if (ecli_text.empty()) throw MissingFieldError("ECLI");
    EcliId ecli = identifiers::parse_ecli(ecli_text);

    const std::string type_text = single(Field::DocType);
    if (type_text.empty()) throw MissingFieldError("Document Type");
    DocumentType type = parse_doc_type(type_text);

    const std::string date_text = single(Field::Date);
    if (date_text.empty()) throw MissingFieldError("Date");
    auto date = parse_date(date_text);
    if (!date) throw IngestError("unparseable date '" + date_text + "'");

    std::vector<ApplicationNumber> apps;
    for (const auto& raw : values_[Field::ApplicationNumbers]) {
      std::size_t start = 0;
      while (start <= raw.size()) {
        auto end = raw.find_first_of(";,", start);
        if (end == std::string::npos) end = raw.size();
        std::string part = collapse(std::string_view(raw).substr(start, end - start));
        if (!part.empty()) {
          auto number = ApplicationNumber::parse(part);
          if (std::find(apps.begin(), apps.end(), number) == apps.end()) apps.push_back(number);
        }
        start = end + 1;
      }
    }
    if (apps.empty() && type.kind() != DocumentType::Kind::Other) apps.push_back(ecli.application_number());

    std::optional<identifiers::ImportanceLevel> importance;
    if (auto raw = single(Field::Importance); !raw.empty()) {
      importance = opts_.importance != nullptr ? opts_.importance->normalize(raw)
                                               : identifiers::normalize_importance(raw);
    }

    std::vector<RespondentState> states;
    const StateTable& table = opts_.states != nullptr ? *opts_.states : bundled_state_table();
    for (auto& name : values_[Field::RespondentStates]) {
      RespondentState st{name, std::nullopt};
      try {
        st.iri = table.resolve(name);
      } catch (const UnresolvedStateError& e) {
        warn(e.what());
      }
      states.push_back(std::move(st));
    }

    std::optional<rdf::Iri> url;
    if (auto raw = single(Field::DocumentUrl); !raw.empty()) {
      try {
        url = rdf::Iri(raw);
      } catch (const rdf::StructuralError& e) {
        throw IngestError(std::string("invalid document URL: ") + e.what());
      }
    } else if (opts_.fallback_url) {
      url = opts_.fallback_url;
    } else {
      throw MissingFieldError("Document URL");
    }

    CaseRecord rec{single(Field::Title),
                   std::move(ecli),
                   std::move(type),
                   *date,
                   std::move(apps),
                   std::move(importance),
                   std::move(states),
                   values_[Field::ConventionArticles],
                   unanimous_,
                   single(Field::Language),
                   single(Field::Conclusion),
                   values_[Field::References],
                   values_[Field::Contributors],
                   single(Field::AccessRights),
                   std::move(*url)};
    validate(rec);
    return rec;
  }

 private:
  std::string single(Field f) {
    auto it = values_.find(f);
    if (it == values_.end() || it->second.empty()) return {};
    return it->second.back();
  }

  const ParseOptions& opts_;
  std::map<Field, std::vector<std::string>> values_;
  std::optional<bool> unanimous_;
};

std::string decode_entities(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += s[i];
      continue;
    }
    const std::string_view name = s.substr(i + 1, semi - i - 1);
    static const std::map<std::string_view, std::string_view> named = {
        {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", " "}};
    if (auto it = named.find(name); it != named.end()) {
      out += it->second;
    } else if (name.size() > 1 && name[0] == '#') {
      unsigned long cp = 0;
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const auto digits = name.substr(hex ? 2 : 1);
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec != std::errc{} || p != digits.data() + digits.size() || cp > 0x10FFFF) {
        out += s.substr(i, semi - i + 1);
      } else if (cp < 0x80) {
        out += static_cast<char>(cp);
      } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
      }
    } else {
      out += s.substr(i, semi - i + 1);
    }
    i = semi;
  }
  return out;
}

std::string strip_tags(std::string_view s) {
  std::string out;
  bool in_tag = false;
  for (const char c : s) {
    if (c == '<') {
      in_tag = true;
      out += ' ';
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag) {
      out += c;
    }
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Returns the inner text of the next <tag ...>...</tag> at or after `from`.
std::optional<std::string_view> next_element(std::string_view html, const std::string& lowered,
                                             std::string_view tag, std::size_t& from) {
  const std::string open = "<" + std::string(tag);
  const std::string close = "</" + std::string(tag) + ">";
  std::size_t pos = from;
  while (true) {
    pos = lowered.find(open, pos);
    if (pos == std::string::npos) return std::nullopt;
    const char after = pos + open.size() < lowered.size() ? lowered[pos + open.size()] : '\0';
    if (after == '>' || std::isspace(static_cast<unsigned char>(after))) break;
    pos += open.size();
  }
  const auto gt = lowered.find('>', pos);
  if (gt == std::string::npos) return std::nullopt;
  const auto end = lowered.find(close, gt);
  if (end == std::string::npos) throw IngestError("unterminated <" + std::string(tag) + "> element");
  from = end + close.size();
  return html.substr(gt + 1, end - gt - 1);
}

}  // namespace

CaseRecord parse_case_details_html(std::string_view html, const ParseOptions& opts) {
  RecordBuilder builder(opts);
  const std::string lowered = lower(html);
  std::size_t pos = 0;
  while (true) {
    std::size_t after_dt = pos;
    auto dt = next_element(html, lowered, "dt", after_dt);
    if (!dt) break;
    std::size_t after_dd = after_dt;
    auto dd = next_element(html, lowered, "dd", after_dd);
    if (!dd) throw IngestError("field '" + collapse(strip_tags(*dt)) + "' has no <dd> value");
    // A <dd> belongs to this <dt> only if no other <dt> starts in between.
    const auto next_dt = lowered.find("<dt", after_dt);
    if (next_dt != std::string::npos && next_dt < after_dd - dd->size()) {
      throw IngestError("field '" + collapse(strip_tags(*dt)) + "' has no <dd> value");
    }
    pos = after_dd;

    const std::string label = collapse(decode_entities(strip_tags(*dt)));
    std::string value = collapse(decode_entities(strip_tags(*dd)));
    auto it = html_aliases().find(fold(label));
    if (it == html_aliases().end()) {
      builder.warn("unknown field '" + label + "' ignored");
      continue;
    }
    if (it->second == Field::Unanimous) {
      auto b = parse_bool(value);
      if (!b && !value.empty()) throw IngestError("unrecognised unanimity value '" + value + "'");
      builder.set_unanimous(b);
      continue;
    }
    if (value.empty()) continue;
    builder.set(it->second, std::move(value));
  }
  return builder.build();
}

CaseRecord parse_case_record_json(std::string_view text, const ParseOptions& opts) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");

  static const std::map<std::string, Field> keys = {
      {"title", Field::Title},
      {"ecli", Field::Ecli},
      {"doc_type", Field::DocType},
      {"date", Field::Date},
      {"application_numbers", Field::ApplicationNumbers},
      {"importance", Field::Importance},
      {"respondent_states", Field::RespondentStates},
      {"convention_articles", Field::ConventionArticles},
      {"unanimous", Field::Unanimous},
      {"language", Field::Language},
      {"conclusion_abstract", Field::Conclusion},
      {"references", Field::References},
      {"contributors", Field::Contributors},
      {"access_rights", Field::AccessRights},
      {"document_url", Field::DocumentUrl},
  };

  RecordBuilder builder(opts);
  // The identifier is checked first so a bogus ECLI reports as such.
  if (auto it = doc.find("ecli"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("/ecli", "expected string");
    (void)identifiers::parse_ecli(it->get<std::string>());
  }
  for (const auto& [key, value] : doc.items()) {
    auto k = keys.find(key);
    if (k == keys.end()) {
      builder.warn("unknown key '" + key + "' ignored");
      continue;
    }
    const std::string pointer = "/" + key;
    const Field f = k->second;
    if (value.is_null()) continue;
    if (f == Field::Unanimous) {
      if (!value.is_boolean()) throw SchemaError(pointer, "expected boolean or null");
      builder.set_unanimous(value.get<bool>());
    } else if (is_multi_valued(f)) {
      if (!value.is_array()) throw SchemaError(pointer, "expected array of strings");
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_string()) throw SchemaError(pointer + "/" + std::to_string(i), "expected string");
        builder.set(f, value[i].get<std::string>());
      }
    } else {
      if (!value.is_string()) throw SchemaError(pointer, "expected string");
      if (!value.get<std::string>().empty()) builder.set(f, value.get<std::string>());
    }
  }
  return builder.build();
}

std::string case_record_to_json(const CaseRecord& rec) {
  nlohmann::ordered_json j;
  j["title"] = rec.title;
  j["ecli"] = identifiers::format_ecli(rec.ecli);
  j["doc_type"] = rec.doc_type.code();
  j["date"] = identifiers::format_date(rec.date);
  auto apps = nlohmann::ordered_json::array();
  for (const auto& a : rec.application_numbers) apps.push_back(a.display());
  j["application_numbers"] = apps;
  j["importance"] = rec.importance ? nlohmann::ordered_json(rec.importance->label) : nullptr;
  auto states = nlohmann::ordered_json::array();
  for (const auto& s : rec.respondent_states) states.push_back(s.name);
  j["respondent_states"] = states;
  j["convention_articles"] = rec.convention_articles;
  j["unanimous"] = rec.unanimous ? nlohmann::ordered_json(*rec.unanimous) : nullptr;
  j["language"] = rec.language;
  j["conclusion_abstract"] = rec.conclusion_abstract;
  j["references"] = rec.references;
  j["contributors"] = rec.contributors;
  j["access_rights"] = rec.access_rights;
  j["document_url"] = rec.document_url.value();
  return j.dump(2) + "\n";
}

}  // namespace legalkg::ingestion
