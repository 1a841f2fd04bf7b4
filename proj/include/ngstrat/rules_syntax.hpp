#pragma once

#include <string_view>
#include <vector>

#include "ngstrat/reason.hpp"

namespace ngstrat {

/// One rule per line:
///
///   rule  := [atom ("," atom)*] "=>" atom
///   atom  := "(" t "," t "," t ")" | "named(" t "," t "," t "," t ")" | "term(" t ")"
///   t     := ?var | <iri> | "literal"
///
/// Blank lines and `#` comments are skipped. Negation (`!`, `not`, `\+`,
/// `~`) is refused. Syntax errors throw ParseError; ill-formed rules (such
/// as an unbound head variable) throw RuleError prefixed with the position.
std::vector<Rule> parse_rules(std::string_view text);

}  // namespace ngstrat
