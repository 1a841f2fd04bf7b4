#include "ngstrat/errors.hpp"

namespace ngstrat {
namespace {

std::string join_lexical(const std::vector<Term>& terms, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += sep;
    out += terms[i].lexical();
  }
  return out;
}

}  // namespace

ConflictError::ConflictError(std::vector<Term> conflicts)
    : Error("conflicting assignments for: " + join_lexical(conflicts, ", ")),
      conflicts_(std::move(conflicts)) {}

CycleError::CycleError(std::vector<Term> cycle)
    : Error("cycle: " + format_cycle(cycle)), cycle_(std::move(cycle)) {}

DuplicateName::DuplicateName(Term name)
    : Error("name already assigned: " + std::string(name.lexical())), name_(name) {}

UnknownName::UnknownName(Term name)
    : Error("name not assigned: " + std::string(name.lexical())), name_(name) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string format_cycle(const std::vector<Term>& cycle) {
  if (cycle.empty()) return {};
  return join_lexical(cycle, " -> ") + " -> " + std::string(cycle.front().lexical());
}

}  // namespace ngstrat
