#include "legalkg/identifiers/importance.hpp"

#include <cctype>

namespace legalkg::identifiers {

namespace {

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
  return out;
}

}  // namespace

ImportanceTable ImportanceTable::hudoc_default() {
  ImportanceTable t;
  t.add("Key cases", 1);
  t.add("1", 2);
  t.add("2", 3);
  t.add("3", 4);
  return t;
}

void ImportanceTable::add(std::string label, int canonical) {
  if (canonical < 1 || canonical > 4) {
    throw std::invalid_argument("canonical importance must be in 1..4, got " + std::to_string(canonical));
  }
  auto key = fold(label);
  if (key.empty()) throw std::invalid_argument("empty importance label");
  entries_[std::move(key)] = ImportanceLevel{canonical, std::move(label)};
}

ImportanceLevel ImportanceTable::normalize(std::string_view raw) const {
  auto it = entries_.find(fold(raw));
  if (it == entries_.end()) throw ImportanceError(std::string(raw));
  return it->second;
}

ImportanceLevel normalize_importance(std::string_view raw) {
  static const ImportanceTable table = ImportanceTable::hudoc_default();
  return table.normalize(raw);
}

}  // namespace legalkg::identifiers
