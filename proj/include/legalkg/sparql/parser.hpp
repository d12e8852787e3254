#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "legalkg/sparql/ast.hpp"

namespace legalkg::sparql {

class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public QueryError {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column, std::size_t offset)
      : QueryError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        detail_(message),
        line_(line),
        column_(column),
        offset_(offset) {}

  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
};

// Valid SPARQL outside the supported subset, e.g. UNION or GROUP BY.
class UnsupportedFeatureError : public QueryError {
 public:
  UnsupportedFeatureError(std::string feature, std::size_t line, std::size_t column, std::size_t offset)
      : QueryError("unsupported SPARQL feature: " + feature), feature_(std::move(feature)),
        line_(line), column_(column), offset_(offset) {}

  const std::string& feature() const noexcept { return feature_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string feature_;
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
};

Query parse_query(std::string_view text);

}  // namespace legalkg::sparql
