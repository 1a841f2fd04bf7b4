#include "ngstrat/quads.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "ngstrat/digest.hpp"
#include "ngstrat/errors.hpp"
#include "ngstrat/syntax.hpp"

namespace ngstrat {
namespace {

enum class Slot { subject, predicate, object, graph };

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::subject:
      return "subject";
    case Slot::predicate:
      return "predicate";
    case Slot::object:
      return "object";
    case Slot::graph:
      return "graph label";
  }
  return "term";
}

/// Empty skolem prefix means blank nodes are rejected.
Term read_term(LineScanner& sc, Slot slot, const std::string& skolem_prefix) {
  sc.skip_space();
  const std::size_t at = sc.position();
  switch (sc.peek()) {
    case '<':
      return Term::iri(sc.iri());
    case '"': {
      std::string lex = sc.literal();
      if (slot != Slot::object) {
        sc.fail_at(at, std::string("literal not allowed as ") + slot_name(slot));
      }
      return Term::literal(lex);
    }
    case '_': {
      if (skolem_prefix.empty()) sc.fail("blank nodes are not allowed here");
      if (slot == Slot::predicate) sc.fail("blank node not allowed as predicate");
      return Term::iri(skolem_prefix + sc.blank_label());
    }
    case '\0':
      sc.fail(std::string("expected ") + slot_name(slot));
    default:
      sc.fail(std::string("unexpected character in ") + slot_name(slot));
  }
}

void finish_statement(LineScanner& sc) {
  sc.expect('.');
  if (!sc.at_statement_end()) sc.fail("unexpected content after '.'");
}

std::string render_level_key(Term t) {
  return t.is_literal() ? "\"" + escape_literal(t.lexical()) + "\"" : escape_iri(t.lexical());
}

std::uint64_t read_level(LineScanner& sc) {
  sc.skip_space();
  const std::size_t start = sc.position();
  std::string digits;
  while (sc.peek() >= '0' && sc.peek() <= '9') {
    digits += sc.peek();
    sc.advance();
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    sc.fail_at(start, "expected a level");
  }
  return value;
}

}  // namespace

NGFamily parse_quads(std::string_view text) {
  const std::string digest = short_digest(text);
  const std::string skolem = "urn:skolem:" + digest + ":";
  const std::string stmt = "urn:stmt:" + digest + ":";

  std::vector<Assignment> out;
  absl::flat_hash_map<Term, std::pair<Triple, std::size_t>> seen;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    LineScanner sc(line, number);
    if (sc.at_statement_end()) return;
    Triple t;
    t.subject = read_term(sc, Slot::subject, skolem);
    t.predicate = read_term(sc, Slot::predicate, skolem);
    t.object = read_term(sc, Slot::object, skolem);
    sc.skip_space();
    Term name;
    const std::size_t name_at = sc.position();
    if (sc.peek() == '.') {
      name = Term::iri(stmt + std::to_string(number));
    } else {
      name = read_term(sc, Slot::graph, skolem);
    }
    finish_statement(sc);
    const auto [it, inserted] = seen.try_emplace(name, t, number);
    if (!inserted) {
      if (it->second.first == t) return;
      sc.fail_at(name_at, "name " + to_string(name) + " already assigned a different triple on line " +
                              std::to_string(it->second.second));
    }
    out.push_back({name, t});
  });
  return NGFamily::from_assignments(std::move(out));
}

std::string render_levels(const LevelAssignment& levels) {
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  rows.reserve(levels.size());
  for (const auto& [t, l] : levels.entries()) rows.emplace_back(render_level_key(t), l);
  std::sort(rows.begin(), rows.end());
  std::string out = "# levels:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += i == 0 ? " " : "; ";
    out += rows[i].first;
    out += '=';
    out += std::to_string(rows[i].second);
  }
  return out;
}

std::string serialize_quads(const NGFamily& n, const LevelAssignment* levels) {
  std::vector<const Assignment*> rows;
  rows.reserve(n.size());
  for (const Assignment& a : n) {
    if (a.triple.subject.is_literal()) {
      throw SerializeError("literal subject in " + to_string(a.name) +
                           " cannot be written as a quad");
    }
    rows.push_back(&a);
  }
  std::sort(rows.begin(), rows.end(), [](const Assignment* a, const Assignment* b) {
    return a->name.lexical() < b->name.lexical();
  });

  std::string out;
  if (levels != nullptr && !levels->empty()) {
    out += render_levels(*levels);
    out += '\n';
  }
  for (const Assignment* a : rows) {
    out += to_string(a->triple.subject);
    out += ' ';
    out += to_string(a->triple.predicate);
    out += ' ';
    out += to_string(a->triple.object);
    out += ' ';
    out += to_string(a->name);
    out += " .\n";
  }
  return out;
}

std::optional<LevelAssignment> parse_levels_annotation(std::string_view text) {
  std::optional<LevelAssignment> result;
  constexpr std::string_view kTag = "# levels:";
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    if (result || !line.starts_with(kTag)) return;
    LineScanner sc(line, number);
    sc.advance(kTag.size());
    LevelAssignment levels;
    while (!sc.at_end()) {
      sc.skip_space();
      if (sc.at_end()) break;
      Term key;
      if (sc.peek() == '"') {
        key = Term::literal(sc.literal());
      } else {
        // Bare IRI: everything up to the last '=' before the next "; ".
        const std::size_t start = sc.position();
        const std::string_view rest = line.substr(start);
        const std::size_t end = std::min(rest.find("; "), rest.size());
        const std::size_t eq = rest.substr(0, end).rfind('=');
        if (eq == std::string_view::npos || eq == 0) sc.fail("expected term=level");
        const std::string wrapped = "<" + std::string(rest.substr(0, eq)) + ">";
        LineScanner inner(wrapped, number);
        key = Term::iri(inner.iri());
        sc.advance(eq);
      }
      sc.expect('=');
      levels.set(key, read_level(sc));
      sc.skip_space();
      if (sc.at_end()) break;
      sc.expect(';');
    }
    result = std::move(levels);
  });
  return result;
}

std::vector<Op> parse_ops(std::string_view text) {
  std::vector<Op> ops;
  const std::string no_blanks;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    LineScanner sc(line, number);
    if (sc.at_statement_end()) return;
    Op op;
    op.line = number;
    const char sign = sc.peek();
    if (sign != '+' && sign != '-') sc.fail("expected '+' or '-'");
    sc.advance();
    op.kind = sign == '+' ? Op::Kind::insert : Op::Kind::remove;
    op.name = read_term(sc, Slot::graph, no_blanks);
    if (op.kind == Op::Kind::insert) {
      op.triple.subject = read_term(sc, Slot::subject, no_blanks);
      op.triple.predicate = read_term(sc, Slot::predicate, no_blanks);
      op.triple.object = read_term(sc, Slot::object, no_blanks);
    }
    finish_statement(sc);
    ops.push_back(op);
  });
  return ops;
}

}  // namespace ngstrat
