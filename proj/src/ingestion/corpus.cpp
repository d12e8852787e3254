#include "legalkg/ingestion/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "legalkg/io_error.hpp"

namespace legalkg::ingestion {

namespace fs = std::filesystem;

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
    // Blank lines are skipped.
    if (!(row.size() == 1 && row.front().empty())) rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_row();
      ++i;
    } else if (c == '\n') {
      end_row();
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (quoted) throw IngestError("CSV: unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

CorpusManifest CorpusManifest::load(const fs::path& csv) {
  return parse(read_file(csv), csv.parent_path());
}

CorpusManifest CorpusManifest::parse(std::string_view csv_text, fs::path base_dir) {
  auto rows = parse_csv(csv_text);
  if (rows.empty()) throw IngestError("manifest: empty file");
  const std::vector<std::string> header = {"case_id", "url", "local_path"};
  if (rows.front() != header) throw IngestError("manifest: header must be 'case_id,url,local_path'");
  CorpusManifest m;
  m.base_dir_ = std::move(base_dir);
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto& r = rows[i];
    const std::string where = "manifest row " + std::to_string(i + 1);
    if (r.size() != 3) throw IngestError(where + ": expected 3 fields, got " + std::to_string(r.size()));
    if (r[0].empty()) throw IngestError(where + ": empty case_id");
    if (r[2].empty()) throw IngestError(where + ": empty local_path");
    if (!seen.insert(r[0]).second) throw IngestError(where + ": duplicate case_id '" + r[0] + "'");
    m.entries_.push_back({r[0], r[1], fs::path(r[2])});
  }
  return m;
}

std::string CorpusManifest::to_csv() const {
  std::string out = "case_id,url,local_path\n";
  for (const auto& e : entries_) {
    out += csv_escape(e.case_id) + ',' + csv_escape(e.url) + ',' + csv_escape(e.local_path.generic_string()) + '\n';
  }
  return out;
}

void CorpusManifest::save(const fs::path& csv) const { write_file(csv, to_csv()); }

void CorpusManifest::upsert(ManifestEntry entry) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ManifestEntry& e) { return e.case_id == entry.case_id; });
  if (it != entries_.end()) {
    *it = std::move(entry);
  } else {
    entries_.push_back(std::move(entry));
  }
}

fs::path CorpusManifest::resolve(const ManifestEntry& e) const {
  if (e.local_path.is_absolute() || base_dir_.empty()) return e.local_path;
  return base_dir_ / e.local_path;
}

std::vector<LoadedCase> load_corpus(const CorpusManifest& manifest, const ParseOptions& opts) {
  std::vector<LoadedCase> out;
  out.reserve(manifest.entries().size());
  for (const auto& entry : manifest.entries()) {
    try {
      const fs::path path = manifest.resolve(entry);
      std::string ext = path.extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      const std::string text = read_file(path);

      std::vector<std::string> warnings;
      ParseOptions local = opts;
      local.warnings = &warnings;
      if (!local.fallback_url && !entry.url.empty() && rdf::is_absolute_iri(entry.url)) {
        local.fallback_url = rdf::Iri(entry.url);
      }
      LoadedCase loaded{entry.case_id, [&] {
                          if (ext == ".json") return parse_case_record_json(text, local);
                          if (ext == ".html" || ext == ".htm") return parse_case_details_html(text, local);
                          throw IngestError("unsupported file extension '" + ext + "'");
                        }(),
                        {}};
      loaded.warnings = std::move(warnings);
      if (opts.warnings != nullptr) {
        for (const auto& w : loaded.warnings) opts.warnings->push_back(entry.case_id + ": " + w);
      }
      out.push_back(std::move(loaded));
    } catch (const std::exception&) {
      std::throw_with_nested(IngestError("case '" + entry.case_id + "'"));
    }
  }
  return out;
}

}  // namespace legalkg::ingestion
