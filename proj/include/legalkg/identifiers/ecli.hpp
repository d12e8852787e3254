#pragma once

#include <chrono>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace legalkg::identifiers {

class EcliError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DocumentType {
 public:
  enum class Kind { Judgment, Decision, Other };

  // Judgment <=> "JUD", Decision <=> "DEC"; any other alphabetic code is Other.
  static DocumentType from_code(std::string_view code);
  static DocumentType judgment() { return from_code("JUD"); }
  static DocumentType decision() { return from_code("DEC"); }

  Kind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

  friend bool operator==(const DocumentType&, const DocumentType&) = default;

 private:
  DocumentType(Kind k, std::string code) : kind_(k), code_(std::move(code)) {}

  Kind kind_;
  std::string code_;
};

class ApplicationNumber {
 public:
  ApplicationNumber(int serial, int year_suffix);

  // Parses the display form "73975/16".
  static ApplicationNumber parse(std::string_view text);

  int serial() const noexcept { return serial_; }
  int year_suffix() const noexcept { return year_suffix_; }
  std::string display() const;

  friend bool operator==(const ApplicationNumber&, const ApplicationNumber&) = default;
  friend auto operator<=>(const ApplicationNumber&, const ApplicationNumber&) = default;

 private:
  int serial_;
  int year_suffix_;
};

// The fifth ECLI part for ECHR documents: MMDD + type code + 7-digit serial + 2-digit year.
struct OrdinalCode {
  unsigned month;
  unsigned day;
  std::string doc_type_code;
  int app_serial;
  int app_year_suffix;

  friend bool operator==(const OrdinalCode&, const OrdinalCode&) = default;
};

class EcliId {
 public:
  // Validates every field; throws EcliError on an invalid date, year, or code.
  EcliId(std::string issuer, std::string court, int year, OrdinalCode ordinal);

  const std::string& issuer() const noexcept { return issuer_; }
  const std::string& court() const noexcept { return court_; }
  int year() const noexcept { return year_; }
  const OrdinalCode& ordinal() const noexcept { return ordinal_; }

  std::chrono::year_month_day date() const;
  DocumentType document_type() const { return DocumentType::from_code(ordinal_.doc_type_code); }
  ApplicationNumber application_number() const {
    return ApplicationNumber(ordinal_.app_serial, ordinal_.app_year_suffix);
  }

  friend bool operator==(const EcliId&, const EcliId&) = default;

 private:
  std::string issuer_;
  std::string court_;
  int year_;
  OrdinalCode ordinal_;
};

// Accepts "ECLI:CE:ECHR:2022:0210JUD007397516"; the issuer spelling "EC" is
// normalised to the canonical "CE".
EcliId parse_ecli(std::string_view text);
std::string format_ecli(const EcliId& id);

std::string format_date(const std::chrono::year_month_day& date);

}  // namespace legalkg::identifiers
