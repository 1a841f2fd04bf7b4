#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ngstrat/term.hpp"

namespace ngstrat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two families assign the same names to different triples.
class ConflictError : public Error {
 public:
  explicit ConflictError(std::vector<Term> conflicts);
  [[nodiscard]] const std::vector<Term>& conflicts() const noexcept { return conflicts_; }

 private:
  std::vector<Term> conflicts_;
};

/// A renaming is not injective on the vocabulary, or turns a name or
/// predicate into a literal.
class RenameError : public Error {
 public:
  using Error::Error;
};

/// The family is not well-stratified; `cycle()` is a directed cycle of its
/// dependency graph.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<Term> cycle);
  [[nodiscard]] const std::vector<Term>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<Term> cycle_;
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(Term name);
  [[nodiscard]] Term name() const noexcept { return name_; }

 private:
  Term name_;
};

class UnknownName : public Error {
 public:
  explicit UnknownName(Term name);
  [[nodiscard]] Term name() const noexcept { return name_; }

 private:
  Term name_;
};

/// Malformed rule (unbound head variable, wrong atom shape, ...).
class RuleError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in any of the concrete formats. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The family cannot be written in the concrete syntax (literal subject).
class SerializeError : public Error {
 public:
  using Error::Error;
};

/// "x -> y -> x"
std::string format_cycle(const std::vector<Term>& cycle);

}  // namespace ngstrat
