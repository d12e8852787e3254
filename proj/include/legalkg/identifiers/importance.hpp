#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace legalkg::identifiers {

class ImportanceError : public std::invalid_argument {
 public:
  explicit ImportanceError(std::string raw)
      : std::invalid_argument("unknown importance level '" + raw + "'"), raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

struct ImportanceLevel {
  int canonical;      // 1 (most important) .. 4
  std::string label;  // HUDOC label, e.g. "Key cases", "1", "2", "3"

  friend bool operator==(const ImportanceLevel&, const ImportanceLevel&) = default;
};

// Maps HUDOC importance labels to canonical levels. Matching ignores case and
// collapses whitespace.
class ImportanceTable {
 public:
  // "Key cases" -> 1, "1" -> 2, "2" -> 3, "3" -> 4.
  static ImportanceTable hudoc_default();

  void add(std::string label, int canonical);
  ImportanceLevel normalize(std::string_view raw) const;
  const std::map<std::string, ImportanceLevel>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, ImportanceLevel> entries_;  // keyed by folded label
};

ImportanceLevel normalize_importance(std::string_view raw);

}  // namespace legalkg::identifiers
