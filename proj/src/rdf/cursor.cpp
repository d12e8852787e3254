#include "cursor.hpp"

#include <cctype>

namespace legalkg::rdf::detail {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool Cursor::starts_with_nocase(std::string_view s) const {
  if (text_.size() - pos_ < s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) !=
        std::toupper(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

char Cursor::get() {
  if (eof()) return '\0';
  const char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  return c;
}

void Cursor::expect(char c, std::string_view what) {
  if (peek() != c || eof()) fail("expected " + std::string(what));
  get();
}

void Cursor::skip_ws(bool newlines) {
  while (!eof()) {
    const char c = peek();
    if (c == ' ' || c == '\t') {
      get();
    } else if (newlines && (c == '\n' || c == '\r')) {
      get();
    } else if (newlines && c == '#') {
      while (!eof() && peek() != '\n') get();
    } else {
      break;
    }
  }
}

std::uint32_t Cursor::read_hex(int digits) {
  std::uint32_t v = 0;
  for (int i = 0; i < digits; ++i) {
    const char c = peek();
    if (!std::isxdigit(static_cast<unsigned char>(c))) fail("invalid unicode escape");
    get();
    v = v * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c))
                                                ? c - '0'
                                                : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
  }
  if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) fail("invalid code point in escape");
  return v;
}

std::string Cursor::read_iriref() {
  expect('<', "'<'");
  std::string out;
  while (true) {
    if (eof()) fail("unterminated IRI");
    const char c = peek();
    if (c == '>') {
      get();
      return out;
    }
    if (c == '\\') {
      get();
      const char e = get();
      if (e == 'u') {
        append_utf8(out, read_hex(4));
      } else if (e == 'U') {
        append_utf8(out, read_hex(8));
      } else {
        fail("invalid escape in IRI");
      }
      continue;
    }
    if (c == '<' || c == ' ' || c == '\n' || c == '\r' || c == '\t' ||
        static_cast<unsigned char>(c) < 0x20) {
      fail("invalid character in IRI");
    }
    out += get();
  }
}

std::string Cursor::read_blank_label() {
  if (!starts_with("_:")) fail("expected blank node label");
  advance(2);
  std::string label;
  while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) label += get();
  if (label.empty()) fail("empty blank node label");
  return label;
}

std::string Cursor::read_quoted(bool long_forms) {
  const char q = peek();
  if (q != '"' && (q != '\'' || !long_forms)) fail("expected string literal");
  const bool is_long = long_forms && peek(1) == q && peek(2) == q;
  advance(is_long ? 3 : 1);
  std::string out;
  while (true) {
    if (eof()) fail("unterminated string literal");
    const char c = peek();
    if (is_long) {
      if (c == q && peek(1) == q && peek(2) == q) {
        // A long string may end with up to two extra quote characters.
        while (peek(3) == q) out += get();
        advance(3);
        return out;
      }
    } else if (c == q) {
      get();
      return out;
    } else if (c == '\n' || c == '\r') {
      fail("line break in short string literal");
    }
    if (c == '\\') {
      get();
      const char e = get();
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, read_hex(4)); break;
        case 'U': append_utf8(out, read_hex(8)); break;
        default: fail("invalid escape sequence in string literal");
      }
      continue;
    }
    out += get();
  }
}

std::string Cursor::read_langtag() {
  expect('@', "'@'");
  std::string tag;
  while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) tag += get();
  if (!is_valid_langtag(tag)) fail("invalid language tag '" + tag + "'");
  return tag;
}

}  // namespace legalkg::rdf::detail
