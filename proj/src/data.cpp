#include "legalkg/data.hpp"

#include <cstdlib>

namespace legalkg {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LEGALKG_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LEGALKG_DATA_DIR;
}

std::filesystem::path data_path(std::string_view relative) { return data_dir() / relative; }

}  // namespace legalkg
