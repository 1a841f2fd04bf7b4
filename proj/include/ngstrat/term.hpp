#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ngstrat {

enum class TermKind : std::uint8_t { iri, literal };

/// An interned IRI or literal.
///
/// Terms are small handles into a process-wide pool; two terms are equal iff
/// they have the same kind and the same lexical form. The handle order is
/// stable within a process but carries no lexical meaning, so anything
/// user-visible sorts with `LexicalLess`.
class Term {
 public:
  Term() = default;

  static Term iri(std::string_view lexical);
  static Term literal(std::string_view lexical);
  static Term make(TermKind kind, std::string_view lexical);

  [[nodiscard]] bool valid() const noexcept { return raw_ != kInvalid; }
  [[nodiscard]] TermKind kind() const noexcept {
    return (raw_ & 1u) ? TermKind::literal : TermKind::iri;
  }
  [[nodiscard]] bool is_iri() const noexcept { return valid() && kind() == TermKind::iri; }
  [[nodiscard]] bool is_literal() const noexcept { return valid() && kind() == TermKind::literal; }

  /// Lexical form; the view stays valid for the lifetime of the process.
  [[nodiscard]] std::string_view lexical() const;

  [[nodiscard]] std::uint32_t handle() const noexcept { return raw_; }

  friend bool operator==(Term, Term) = default;
  friend auto operator<=>(Term, Term) = default;

  template <typename H>
  friend H AbslHashValue(H h, Term t) {
    return H::combine(std::move(h), t.raw_);
  }

 private:
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  explicit Term(std::uint32_t raw) : raw_(raw) {}

  std::uint32_t raw_ = kInvalid;
};

/// Orders terms by (kind, lexical form).
struct LexicalLess {
  bool operator()(Term a, Term b) const;
};

/// N-Quads style rendering: `<iri>` or `"escaped literal"`.
std::string to_string(Term t);

/// Number of distinct terms interned so far.
std::size_t interned_term_count();

}  // namespace ngstrat

template <>
struct std::hash<ngstrat::Term> {
  std::size_t operator()(ngstrat::Term t) const noexcept {
    return std::hash<std::uint32_t>{}(t.handle());
  }
};
