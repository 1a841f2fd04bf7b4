#include "ngstrat/syntax.hpp"

#include <cstdint>
#include <cstdio>

#include "ngstrat/errors.hpp"

namespace ngstrat {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xc0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xe0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else {
    out += static_cast<char>(0xf0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  }
}

void append_u_escape(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
  out += buf;
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          append_u_escape(out, static_cast<unsigned char>(c));
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string escape_iri(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      append_u_escape(out, u);
    } else {
      out += c;
    }
  }
  return out;
}

void LineScanner::skip_space() {
  while (!at_end() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
}

bool LineScanner::at_statement_end() {
  skip_space();
  return at_end() || line_[pos_] == '#';
}

void LineScanner::expect(char c) {
  skip_space();
  if (peek() != c) fail(std::string("expected '") + c + "'");
  ++pos_;
}

void LineScanner::fail(const std::string& message) const { fail_at(pos_, message); }

void LineScanner::fail_at(std::size_t pos, const std::string& message) const {
  throw ParseError(line_number_, pos + 1, message);
}

void LineScanner::append_escape(std::string& out, bool allow_char_escapes) {
  const std::size_t start = pos_;
  ++pos_;  // backslash
  if (at_end()) fail_at(start, "dangling escape");
  const char c = line_[pos_++];
  if (c == 'u' || c == 'U') {
    const std::size_t digits = c == 'u' ? 4 : 8;
    if (pos_ + digits > line_.size()) fail_at(start, "truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char h = line_[pos_ + i];
      cp <<= 4;
      if (h >= '0' && h <= '9') {
        cp |= static_cast<std::uint32_t>(h - '0');
      } else if (h >= 'a' && h <= 'f') {
        cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      } else if (h >= 'A' && h <= 'F') {
        cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      } else {
        fail_at(start, "bad hex digit in unicode escape");
      }
    }
    if (cp > 0x10ffff) fail_at(start, "code point out of range");
    pos_ += digits;
    append_utf8(out, cp);
    return;
  }
  if (!allow_char_escapes) fail_at(start, "only \\u escapes are allowed in IRIs");
  switch (c) {
    case 't':
      out += '\t';
      break;
    case 'b':
      out += '\b';
      break;
    case 'n':
      out += '\n';
      break;
    case 'r':
      out += '\r';
      break;
    case 'f':
      out += '\f';
      break;
    case '"':
    case '\'':
    case '\\':
      out += c;
      break;
    default:
      fail_at(start, std::string("unknown escape \\") + c);
  }
}

std::string LineScanner::iri() {
  const std::size_t start = pos_;
  expect('<');
  std::string out;
  while (true) {
    if (at_end()) fail_at(start, "unterminated IRI");
    const char c = line_[pos_];
    if (c == '>') {
      ++pos_;
      break;
    }
    if (c == '\\') {
      append_escape(out, false);
      continue;
    }
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`') {
      fail("character not allowed in IRI");
    }
    out += c;
    ++pos_;
  }
  if (out.empty()) fail_at(start, "empty IRI");
  return out;
}

std::string LineScanner::literal() {
  const std::size_t start = pos_;
  expect('"');
  std::string out;
  while (true) {
    if (at_end()) fail_at(start, "unterminated literal");
    const char c = line_[pos_];
    if (c == '"') {
      ++pos_;
      break;
    }
    if (c == '\\') {
      append_escape(out, true);
      continue;
    }
    out += c;
    ++pos_;
  }
  if (peek() == '@') fail("language tags are not supported");
  if (starts_with("^^")) fail("datatypes are not supported");
  return out;
}

std::string LineScanner::blank_label() {
  if (!starts_with("_:")) fail("expected blank node");
  pos_ += 2;
  const std::size_t start = pos_;
  while (!at_end() && is_name_char(line_[pos_])) ++pos_;
  // A trailing '.' belongs to the statement terminator.
  while (pos_ > start && line_[pos_ - 1] == '.') --pos_;
  if (pos_ == start) fail("empty blank node label");
  return std::string(line_.substr(start, pos_ - start));
}

std::string LineScanner::variable() {
  if (peek() != '?') fail("expected variable");
  ++pos_;
  const std::size_t start = pos_;
  while (!at_end() && is_name_char(line_[pos_]) && line_[pos_] != '.') ++pos_;
  if (pos_ == start) fail("empty variable name");
  return std::string(line_.substr(start, pos_ - start));
}

}  // namespace ngstrat
