#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "legalkg/ingestion/parsers.hpp"

namespace legalkg::ingestion {

struct ManifestEntry {
  std::string case_id;
  std::string url;
  std::filesystem::path local_path;  // relative paths resolve against the manifest directory

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// CSV with header `case_id,url,local_path`.
class CorpusManifest {
 public:
  static CorpusManifest load(const std::filesystem::path& csv);
  static CorpusManifest parse(std::string_view csv_text, std::filesystem::path base_dir = {});

  void save(const std::filesystem::path& csv) const;
  std::string to_csv() const;

  // Replaces the entry with the same case id, or appends.
  void upsert(ManifestEntry entry);

  const std::vector<ManifestEntry>& entries() const noexcept { return entries_; }
  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }
  std::filesystem::path resolve(const ManifestEntry& e) const;

 private:
  std::vector<ManifestEntry> entries_;
  std::filesystem::path base_dir_;
};

struct LoadedCase {
  std::string case_id;
  CaseRecord record;
  std::vector<std::string> warnings;
};

// Loads every manifest entry in manifest order (.html/.htm or .json by extension).
// Errors are rethrown nested inside an IngestError naming the case id.
std::vector<LoadedCase> load_corpus(const CorpusManifest& manifest, const ParseOptions& opts = {});

// Minimal RFC 4180 reader: returns rows of fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

// Both throw legalkg::IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace legalkg::ingestion
