#pragma once

#include <filesystem>
#include <string_view>

namespace legalkg {

// Root of the bundled data files: $LEGALKG_DATA_DIR when set, else the build-time default.
std::filesystem::path data_dir();
std::filesystem::path data_path(std::string_view relative);

}  // namespace legalkg
