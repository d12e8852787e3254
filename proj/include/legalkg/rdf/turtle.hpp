#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "legalkg/rdf/graph.hpp"

namespace legalkg::rdf {

// Syntax error in Turtle or N-Triples input. Line and column are 1-based.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& detail() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

class UndefinedPrefixError : public SyntaxError {
 public:
  UndefinedPrefixError(const std::string& prefix, std::size_t line, std::size_t column)
      : SyntaxError("undefined prefix '" + prefix + ":'", line, column), prefix_(prefix) {}

  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

// Parses Turtle: @prefix/PREFIX, ';' and ',' lists, 'a', quoted/typed/language
// literals, `_:label` blank nodes, and integer/decimal/double/boolean shorthand.
Graph parse_turtle(std::string_view text);

// Deterministic Turtle: @prefix lines sorted by name, then subjects in term order
// with predicate lists. Uses prefix abbreviations wherever the local part allows it.
std::string serialize_turtle(const Graph& g);

Graph parse_ntriples(std::string_view text);
std::string serialize_ntriples(const Graph& g);

// N-Triples for a .nt file, Turtle otherwise. Throws legalkg::IoError when unreadable.
Graph load_graph(const std::filesystem::path& path);

}  // namespace legalkg::rdf
