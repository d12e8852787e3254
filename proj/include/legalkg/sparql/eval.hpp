#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "legalkg/rdf/graph.hpp"
#include "legalkg/sparql/ast.hpp"

namespace legalkg::sparql {

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("query evaluation timed out") {}
};

using Solution = std::map<std::string, rdf::Term>;

struct ResultSet {
  enum class Kind { Bindings, Boolean };

  Kind kind = Kind::Bindings;
  std::vector<std::string> vars;
  std::vector<Solution> solutions;
  bool boolean = false;

  friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

struct EvalOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

ResultSet evaluate(const Query& q, const rdf::Graph& g, const EvalOptions& opts = {});

// Convenience: parse then evaluate.
ResultSet run_query(std::string_view text, const rdf::Graph& g, const EvalOptions& opts = {});

// Ordering used by ORDER BY: unbound < IRIs < blank nodes < numeric literals (by value)
// < other literals; ties fall back to term ordering.
int compare_for_order(const std::optional<rdf::Term>& a, const std::optional<rdf::Term>& b);

// Numeric value of a literal with an integer, decimal, float or double datatype.
std::optional<long double> numeric_value(const rdf::Term& t);

}  // namespace legalkg::sparql
