#include "legalkg/identifiers/ecli.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <vector>

namespace legalkg::identifiers {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool all_upper_alpha(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!std::isupper(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

DocumentType DocumentType::from_code(std::string_view code) {
  if (code == "JUD") return DocumentType(Kind::Judgment, "JUD");
  if (code == "DEC") return DocumentType(Kind::Decision, "DEC");
  if (!all_upper_alpha(code)) throw EcliError("invalid document type code '" + std::string(code) + "'");
  return DocumentType(Kind::Other, std::string(code));
}

ApplicationNumber::ApplicationNumber(int serial, int year_suffix)
    : serial_(serial), year_suffix_(year_suffix) {
  if (serial < 1 || serial > 9'999'999) throw EcliError("application serial out of range");
  if (year_suffix < 0 || year_suffix > 99) throw EcliError("application year suffix out of range");
}

ApplicationNumber ApplicationNumber::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw EcliError("application number '" + std::string(text) + "' lacks '/'");
  }
  const auto serial = text.substr(0, slash);
  const auto year = text.substr(slash + 1);
  if (!all_digits(serial) || serial.front() == '0' || serial.size() > 7 || !all_digits(year) ||
      year.size() != 2) {
    throw EcliError("malformed application number '" + std::string(text) + "'");
  }
  return ApplicationNumber(to_int(serial), to_int(year));
}

std::string ApplicationNumber::display() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%d/%02d", serial_, year_suffix_);
  return buf;
}

EcliId::EcliId(std::string issuer, std::string court, int year, OrdinalCode ordinal)
    : issuer_(std::move(issuer)), court_(std::move(court)), year_(year), ordinal_(std::move(ordinal)) {
  if (issuer_.size() != 2 || !all_upper_alpha(issuer_)) throw EcliError("issuer must be a 2-letter code");
  if (court_.empty()) throw EcliError("empty court code");
  for (const char c : court_) {
    if (!std::isupper(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c))) {
      throw EcliError("invalid court code '" + court_ + "'");
    }
  }
  if (year_ < 1950 || year_ > 2100) throw EcliError("year " + std::to_string(year_) + " out of range");
  if (!date().ok()) {
    throw EcliError("invalid date " + std::to_string(year_) + "-" + std::to_string(ordinal_.month) +
                    "-" + std::to_string(ordinal_.day));
  }
  if (!all_upper_alpha(ordinal_.doc_type_code)) throw EcliError("invalid document type code");
  // Validates serial and year-suffix ranges.
  (void)application_number();
}

std::chrono::year_month_day EcliId::date() const {
  return std::chrono::year_month_day{std::chrono::year{year_}, std::chrono::month{ordinal_.month},
                                     std::chrono::day{ordinal_.day}};
}

EcliId parse_ecli(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 5) {
    throw EcliError("expected 5 colon-separated parts, got " + std::to_string(parts.size()) + " in '" +
                    std::string(text) + "'");
  }
  if (parts[0] != "ECLI") throw EcliError("identifier must start with 'ECLI'");
  std::string issuer(parts[1]);
  if (issuer == "EC") issuer = "CE";
  if (!all_digits(parts[3]) || parts[3].size() != 4) throw EcliError("year must have 4 digits");

  const std::string_view ordinal = parts[4];
  if (ordinal.size() < 4 || !all_digits(ordinal.substr(0, 4))) {
    throw EcliError("ordinal must start with MMDD");
  }
  std::size_t i = 4;
  while (i < ordinal.size() && std::isalpha(static_cast<unsigned char>(ordinal[i]))) ++i;
  const std::string_view type_code = ordinal.substr(4, i - 4);
  const std::string_view tail = ordinal.substr(i);
  if (type_code.empty()) throw EcliError("ordinal lacks a document type code");
  if (tail.size() != 9 || !all_digits(tail)) throw EcliError("ordinal tail must be 9 digits");

  OrdinalCode code{static_cast<unsigned>(to_int(ordinal.substr(0, 2))),
                   static_cast<unsigned>(to_int(ordinal.substr(2, 2))), std::string(type_code),
                   to_int(tail.substr(0, 7)), to_int(tail.substr(7, 2))};
  return EcliId(std::move(issuer), std::string(parts[2]), to_int(parts[3]), std::move(code));
}

std::string format_ecli(const EcliId& id) {
  const auto& o = id.ordinal();
  char tail[40];
  std::snprintf(tail, sizeof tail, "%02u%02u%s%07d%02d", o.month, o.day, o.doc_type_code.c_str(),
                o.app_serial, o.app_year_suffix);
  return "ECLI:" + id.issuer() + ":" + id.court() + ":" + std::to_string(id.year()) + ":" + tail;
}

std::string format_date(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

}  // namespace legalkg::identifiers
