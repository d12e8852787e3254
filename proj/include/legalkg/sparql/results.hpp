#pragma once

#include <stdexcept>
#include <string>

#include "legalkg/sparql/eval.hpp"

namespace legalkg::sparql {

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kResultsJsonType = "application/sparql-results+json";
inline constexpr const char* kResultsCsvType = "text/csv";

// SPARQL 1.1 Query Results JSON.
std::string serialize_results_json(const ResultSet& r);
// SPARQL 1.1 Query Results CSV; throws SerializationError for ASK results.
std::string serialize_results_csv(const ResultSet& r);

}  // namespace legalkg::sparql
