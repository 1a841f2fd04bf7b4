#include "ngstrat/rules_syntax.hpp"

#include <string>

#include "ngstrat/errors.hpp"
#include "ngstrat/syntax.hpp"

namespace ngstrat {
namespace {

void refuse_negation(LineScanner& sc) {
  sc.skip_space();
  if (sc.peek() == '!' || sc.peek() == '~' || sc.starts_with("\\+") || sc.starts_with("not")) {
    sc.fail("negated atoms are not supported");
  }
}

RuleTerm read_rule_term(LineScanner& sc) {
  sc.skip_space();
  switch (sc.peek()) {
    case '?':
      return RuleTerm::var(sc.variable());
    case '<':
      return RuleTerm::constant(Term::iri(sc.iri()));
    case '"':
      return RuleTerm::constant(Term::literal(sc.literal()));
    case '_':
      sc.fail("blank nodes are not allowed in rules");
    default:
      sc.fail("expected ?variable, <iri> or \"literal\"");
  }
}

std::vector<RuleTerm> read_args(LineScanner& sc, std::size_t count) {
  std::vector<RuleTerm> args;
  sc.expect('(');
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) sc.expect(',');
    args.push_back(read_rule_term(sc));
  }
  sc.expect(')');
  return args;
}

Atom read_atom(LineScanner& sc) {
  refuse_negation(sc);
  if (sc.peek() == '(') {
    auto a = read_args(sc, 3);
    return Atom::derived(a[0], a[1], a[2]);
  }
  if (sc.starts_with("named")) {
    sc.advance(5);
    auto a = read_args(sc, 4);
    return Atom::named(a[0], a[1], a[2], a[3]);
  }
  if (sc.starts_with("term")) {
    sc.advance(4);
    auto a = read_args(sc, 1);
    return Atom::term(a[0]);
  }
  sc.fail("expected an atom");
}

}  // namespace

std::vector<Rule> parse_rules(std::string_view text) {
  std::vector<Rule> rules;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    LineScanner sc(line, number);
    if (sc.at_statement_end()) return;
    std::vector<Atom> body;
    sc.skip_space();
    if (!sc.starts_with("=>")) {
      while (true) {
        body.push_back(read_atom(sc));
        sc.skip_space();
        if (sc.peek() != ',') break;
        sc.advance();
      }
    }
    sc.skip_space();
    if (!sc.starts_with("=>")) sc.fail("expected ',' or '=>'");
    sc.advance(2);
    const std::size_t head_at = sc.position();
    Atom head = read_atom(sc);
    if (!sc.at_statement_end()) sc.fail("unexpected content after rule head");
    try {
      rules.emplace_back(std::move(body), std::move(head), "line " + std::to_string(number));
    } catch (const RuleError& e) {
      throw RuleError(std::to_string(number) + ":" + std::to_string(head_at + 1) + ": " + e.what());
    }
  });
  return rules;
}

}  // namespace ngstrat
