#pragma once

#include <stdexcept>

namespace legalkg {

// A file or directory that could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace legalkg
