#pragma once

// Character cursor shared by the Turtle and N-Triples readers.

#include <cstdint>
#include <string>
#include <string_view>

#include "legalkg/rdf/turtle.hpp"

namespace legalkg::rdf::detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  bool starts_with_nocase(std::string_view s) const;

  char get();
  void advance(std::size_t n) {
    while (n-- > 0) get();
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  std::size_t offset() const { return pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, line_, column_);
  }

  void expect(char c, std::string_view what);

  // Skips spaces and tabs; with `newlines`, also line breaks and '#' comments.
  void skip_ws(bool newlines = true);

  std::string read_iriref();
  std::string read_blank_label();
  // Reads a quoted string (single, double, or triple quoted when `long_forms`).
  std::string read_quoted(bool long_forms);
  std::string read_langtag();

 private:
  std::uint32_t read_hex(int digits);

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

void append_utf8(std::string& out, std::uint32_t cp);

}  // namespace legalkg::rdf::detail
