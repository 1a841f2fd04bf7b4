#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ngstrat/family.hpp"
#include "ngstrat/stratify.hpp"

namespace ngstrat {

/// Parses the quad syntax:
///
///   <s> <p> <o> <g> .    assignment g ↦ (s, p, o)
///   <s> <p> <o> .        named urn:stmt:<digest of text>:<line>
///   # comment
///
/// Subjects are IRIs or blank nodes; objects may also be "literals";
/// graph labels are IRIs or blank nodes. A blank node _:b becomes
/// urn:skolem:<digest of text>:b. Throws ParseError (with line and column)
/// on malformed input and on a name bound to two different triples.
NGFamily parse_quads(std::string_view text);

/// One line per assignment, sorted by name. With `levels`, a leading
/// `# levels: t=n; ...` comment lists every entry sorted by its rendering.
/// Throws SerializeError on a literal subject.
std::string serialize_quads(const NGFamily& n, const LevelAssignment* levels = nullptr);

/// The `# levels:` header line, without the trailing newline.
std::string render_levels(const LevelAssignment& levels);

/// Reads the first `# levels:` comment of a document, if any.
std::optional<LevelAssignment> parse_levels_annotation(std::string_view text);

struct Op {
  enum class Kind { insert, remove };
  Kind kind = Kind::insert;
  Term name;
  Triple triple;  // unset for removals
  std::size_t line = 0;
};

/// Ops log: `+ <name> <s> <p> <o> .` or `- <name> .`, one per line, with
/// `#` comments. Blank nodes are not accepted.
std::vector<Op> parse_ops(std::string_view text);

}  // namespace ngstrat
