#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ngstrat {

/// Escapes a literal body for use between double quotes.
std::string escape_literal(std::string_view s);

/// Escapes characters that cannot appear between angle brackets as \uXXXX.
std::string escape_iri(std::string_view s);

/// Cursor over one line of a line-oriented format, reporting errors with
/// 1-based line and column.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  void skip_space();
  [[nodiscard]] bool at_end() const noexcept { return pos_ >= line_.size(); }
  /// End of line or start of a `#` comment, after skipping spaces.
  [[nodiscard]] bool at_statement_end();
  [[nodiscard]] char peek() const noexcept { return at_end() ? '\0' : line_[pos_]; }
  [[nodiscard]] bool starts_with(std::string_view s) const noexcept {
    return line_.substr(pos_).starts_with(s);
  }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] std::size_t line_number() const noexcept { return line_number_; }

  void advance(std::size_t n = 1) { pos_ += n; }
  void expect(char c);

  /// `<...>` with \u escapes decoded; the scanner sits on '<'.
  std::string iri();
  /// `"..."` with escapes decoded; language tags and datatypes are rejected.
  std::string literal();
  /// `_:label`; returns the label.
  std::string blank_label();
  /// `?name` (the scanner sits on '?').
  std::string variable();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const;

 private:
  void append_escape(std::string& out, bool allow_char_escapes);

  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

/// Splits text into lines (LF or CRLF), calling f(line, 1-based number).
template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line, number);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace ngstrat
