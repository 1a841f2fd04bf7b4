#include "ngstrat/reason.hpp"

#include <algorithm>
#include <stdexcept>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "ngstrat/algebra.hpp"
#include "ngstrat/digest.hpp"
#include "ngstrat/errors.hpp"
#include "ngstrat/stratify.hpp"

namespace ngstrat {

namespace vocab {
Term predicate() { return Term::iri("predicate"); }
Term transitive() { return Term::iri("transitive"); }
Term reflexive() { return Term::iri("reflexive"); }
Term symmetric() { return Term::iri("symmetric"); }
Term reverse() { return Term::iri("reverse"); }
Term created() { return Term::iri("new"); }
Term updated() { return Term::iri("upd"); }
Term deleted() { return Term::iri("del"); }
Term uses() { return Term::iri("uses"); }
}  // namespace vocab

RuleTerm RuleTerm::var(std::string name) {
  if (name.empty()) throw RuleError("empty variable name");
  RuleTerm t;
  t.variable_ = std::move(name);
  return t;
}

RuleTerm RuleTerm::constant(Term c) {
  if (!c.valid()) throw RuleError("invalid constant");
  RuleTerm t;
  t.constant_ = c;
  return t;
}

Atom Atom::derived(RuleTerm s, RuleTerm p, RuleTerm o) {
  return {AtomKind::derived, {std::move(s), std::move(p), std::move(o)}};
}

Atom Atom::named(RuleTerm x, RuleTerm s, RuleTerm p, RuleTerm o) {
  return {AtomKind::named, {std::move(x), std::move(s), std::move(p), std::move(o)}};
}

Atom Atom::term(RuleTerm t) { return {AtomKind::vocabulary, {std::move(t)}}; }

namespace {

std::size_t arity(AtomKind kind) {
  switch (kind) {
    case AtomKind::derived:
      return 3;
    case AtomKind::named:
      return 4;
    case AtomKind::vocabulary:
      return 1;
  }
  return 0;
}

}  // namespace

Rule::Rule(std::vector<Atom> body, Atom head, std::string label)
    : body_(std::move(body)), head_(std::move(head)), label_(std::move(label)) {
  if (head_.kind != AtomKind::derived) throw RuleError("rule head must be a triple atom");
  absl::flat_hash_set<std::string> bound;
  for (const auto& atom : body_) {
    if (atom.args.size() != arity(atom.kind)) throw RuleError("atom has the wrong arity");
    for (const auto& t : atom.args) {
      if (t.is_variable()) bound.insert(t.variable());
    }
  }
  if (head_.args.size() != 3) throw RuleError("atom has the wrong arity");
  for (const auto& t : head_.args) {
    if (t.is_variable() && !bound.contains(t.variable())) {
      throw RuleError("head variable ?" + t.variable() + " does not occur in the body");
    }
  }
  const auto& p = head_.args[1];
  if (!p.is_variable() && !p.constant().is_iri()) {
    throw RuleError("head predicate must be an IRI");
  }
}

std::vector<Rule> builtin_closure_rules() {
  auto v = [](const char* name) { return RuleTerm::var(name); };
  auto c = [](Term t) { return RuleTerm::constant(t); };
  std::vector<Rule> rules;
  rules.emplace_back(std::vector<Atom>{Atom::derived(v("a"), v("b"), v("c")),
                                       Atom::derived(v("c"), v("b"), v("d")),
                                       Atom::derived(v("b"), c(vocab::predicate()),
                                                     c(vocab::transitive()))},
                     Atom::derived(v("a"), v("b"), v("d")), "transitive");
  rules.emplace_back(std::vector<Atom>{Atom::derived(v("b"), c(vocab::predicate()),
                                                     c(vocab::reflexive())),
                                       Atom::term(v("a"))},
                     Atom::derived(v("a"), v("b"), v("a")), "reflexive");
  rules.emplace_back(std::vector<Atom>{Atom::derived(v("b"), c(vocab::predicate()),
                                                     c(vocab::symmetric())),
                                       Atom::derived(v("a"), v("b"), v("c"))},
                     Atom::derived(v("c"), v("b"), v("a")), "symmetric");
  rules.emplace_back(std::vector<Atom>{Atom::derived(v("b"), c(vocab::reverse()), v("rb")),
                                       Atom::derived(v("a"), v("b"), v("c"))},
                     Atom::derived(v("c"), v("rb"), v("a")), "reverse");
  rules.emplace_back(std::vector<Atom>{},
                     Atom::derived(c(vocab::reverse()), c(vocab::predicate()),
                                   c(vocab::symmetric())),
                     "reverse-axiom");
  return rules;
}

std::vector<Rule> uses_rules() {
  auto v = [](const char* name) { return RuleTerm::var(name); };
  auto c = [](Term t) { return RuleTerm::constant(t); };
  std::vector<Rule> rules;
  for (Term q : {vocab::created(), vocab::updated()}) {
    rules.emplace_back(std::vector<Atom>{Atom::named(v("y"), v("d"), c(q), v("z")),
                                         Atom::derived(v("g"), c(vocab::created()), v("y"))},
                       Atom::derived(v("g"), c(vocab::uses()), v("d")),
                       "uses-" + std::string(q.lexical()));
  }
  return rules;
}

namespace {

struct Slot {
  bool is_var = false;
  std::uint32_t var = 0;
  Term constant;
};

struct CompiledAtom {
  AtomKind kind;
  std::vector<Slot> slots;
};

struct CompiledRule {
  std::vector<CompiledAtom> body;
  CompiledAtom head;
  std::uint32_t var_count = 0;
  bool recursive = false;  // has a derived or vocabulary atom
};

CompiledRule compile(const Rule& rule) {
  CompiledRule out;
  absl::flat_hash_map<std::string, std::uint32_t> ids;
  auto slot = [&](const RuleTerm& t) {
    Slot s;
    if (t.is_variable()) {
      s.is_var = true;
      auto [it, inserted] = ids.emplace(t.variable(), static_cast<std::uint32_t>(ids.size()));
      s.var = it->second;
    } else {
      s.constant = t.constant();
    }
    return s;
  };
  auto atom = [&](const Atom& a) {
    CompiledAtom c{a.kind, {}};
    for (const auto& t : a.args) c.slots.push_back(slot(t));
    return c;
  };
  for (const auto& a : rule.body()) {
    out.body.push_back(atom(a));
    if (a.kind != AtomKind::named) out.recursive = true;
  }
  out.head = atom(rule.head());
  out.var_count = static_cast<std::uint32_t>(ids.size());
  return out;
}

// Facts are append-only; a "limit" restricts a lookup to facts (or terms)
// known before the current round.
class Engine {
 public:
  explicit Engine(const NGFamily& n) : family_(n) {
    for (const auto& a : n) add_fact(a.triple);
  }

  std::vector<Triple> run(std::span<const Rule> rules) {
    std::vector<CompiledRule> compiled;
    compiled.reserve(rules.size());
    for (const auto& r : rules) compiled.push_back(compile(r));

    Range facts{0, facts_.size()};
    Range terms{0, terms_.size()};
    bool first = true;
    while (first || facts.begin != facts.end || terms.begin != terms.end) {
      pending_.clear();
      for (const auto& rule : compiled) {
        if (!rule.recursive) {
          if (first) evaluate(rule, SIZE_MAX, facts, terms);
          continue;
        }
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
          const AtomKind k = rule.body[i].kind;
          if (k == AtomKind::derived && facts.begin != facts.end) evaluate(rule, i, facts, terms);
          if (k == AtomKind::vocabulary && terms.begin != terms.end) {
            evaluate(rule, i, facts, terms);
          }
        }
      }
      first = false;
      const std::size_t old_facts = facts_.size();
      const std::size_t old_terms = terms_.size();
      for (const auto& t : pending_) add_fact(t);
      facts = {old_facts, facts_.size()};
      terms = {old_terms, terms_.size()};
    }
    std::vector<Triple> out = facts_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Range {
    std::size_t begin;
    std::size_t end;
  };

  void add_fact(const Triple& t) {
    if (!known_.insert(t).second) return;
    const auto idx = static_cast<std::uint32_t>(facts_.size());
    facts_.push_back(t);
    by_subject_[t.subject].push_back(idx);
    by_predicate_[t.predicate].push_back(idx);
    by_object_[t.object].push_back(idx);
    for (Term x : {t.subject, t.predicate, t.object}) {
      if (term_pos_.emplace(x, terms_.size()).second) terms_.push_back(x);
    }
  }

  // `delta_atom` is evaluated over the delta ranges, every other atom over
  // everything known before this round.
  void evaluate(const CompiledRule& rule, std::size_t delta_atom, Range facts, Range terms) {
    std::vector<Term> binding(rule.var_count);
    std::vector<std::size_t> order;
    if (delta_atom != SIZE_MAX) order.push_back(delta_atom);
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      if (i != delta_atom) order.push_back(i);
    }
    const Range all_facts{0, facts.end};
    const Range all_terms{0, terms.end};
    match(rule, order, 0, binding, [&](std::size_t atom) {
      return atom == delta_atom ? std::pair{facts, terms} : std::pair{all_facts, all_terms};
    });
  }

  template <typename RangeOf>
  void match(const CompiledRule& rule, const std::vector<std::size_t>& order, std::size_t depth,
             std::vector<Term>& binding, const RangeOf& range_of) {
    if (depth == order.size()) {
      emit(rule, binding);
      return;
    }
    const std::size_t atom_index = order[depth];
    const CompiledAtom& atom = rule.body[atom_index];
    const auto [facts, terms] = range_of(atom_index);

    auto value = [&](const Slot& s) { return s.is_var ? binding[s.var] : s.constant; };
    auto unify = [&](std::span<const Term> row, auto&& next) {
      std::uint32_t newly[4];
      std::size_t count = 0;
      bool ok = true;
      for (std::size_t k = 0; k < atom.slots.size() && ok; ++k) {
        const Slot& s = atom.slots[k];
        const Term bound = value(s);
        if (bound.valid()) {
          ok = bound == row[k];
        } else {
          binding[s.var] = row[k];
          newly[count++] = s.var;
        }
      }
      if (ok) next();
      for (std::size_t k = 0; k < count; ++k) binding[newly[k]] = Term{};
    };
    auto recurse = [&] { match(rule, order, depth + 1, binding, range_of); };

    switch (atom.kind) {
      case AtomKind::derived: {
        const Term s = value(atom.slots[0]);
        const Term p = value(atom.slots[1]);
        const Term o = value(atom.slots[2]);
        auto visit = [&](std::uint32_t idx) {
          if (idx < facts.begin || idx >= facts.end) return;
          const Triple& t = facts_[idx];
          const Term row[3] = {t.subject, t.predicate, t.object};
          unify(row, recurse);
        };
        const std::vector<std::uint32_t>* candidates = nullptr;
        auto lookup = [&](const auto& index, Term key) -> const std::vector<std::uint32_t>* {
          static const std::vector<std::uint32_t> kEmpty;
          auto it = index.find(key);
          return it == index.end() ? &kEmpty : &it->second;
        };
        if (s.valid()) {
          candidates = lookup(by_subject_, s);
        } else if (o.valid()) {
          candidates = lookup(by_object_, o);
        } else if (p.valid()) {
          candidates = lookup(by_predicate_, p);
        }
        if (candidates) {
          for (std::uint32_t idx : *candidates) visit(idx);
        } else {
          for (std::size_t idx = facts.begin; idx < facts.end; ++idx) {
            visit(static_cast<std::uint32_t>(idx));
          }
        }
        break;
      }
      case AtomKind::named: {
        const Term x = value(atom.slots[0]);
        auto visit = [&](const Assignment& a) {
          const Term row[4] = {a.name, a.triple.subject, a.triple.predicate, a.triple.object};
          unify(row, recurse);
        };
        if (x.valid()) {
          if (const Triple* t = family_.find(x)) visit({x, *t});
        } else {
          for (const auto& a : family_) visit(a);
        }
        break;
      }
      case AtomKind::vocabulary: {
        const Term t = value(atom.slots[0]);
        if (t.valid()) {
          auto it = term_pos_.find(t);
          if (it != term_pos_.end() && it->second >= terms.begin && it->second < terms.end) {
            recurse();
          }
        } else {
          for (std::size_t i = terms.begin; i < terms.end; ++i) {
            const Term row[1] = {terms_[i]};
            unify(row, recurse);
          }
        }
        break;
      }
    }
  }

  void emit(const CompiledRule& rule, const std::vector<Term>& binding) {
    auto value = [&](const Slot& s) { return s.is_var ? binding[s.var] : s.constant; };
    const Triple t{value(rule.head.slots[0]), value(rule.head.slots[1]),
                   value(rule.head.slots[2])};
    if (!t.predicate.is_iri()) return;  // a literal bound into predicate position
    if (!known_.contains(t)) pending_.push_back(t);
  }

  const NGFamily& family_;
  std::vector<Triple> facts_;
  absl::flat_hash_set<Triple> known_;
  absl::flat_hash_map<Term, std::vector<std::uint32_t>> by_subject_;
  absl::flat_hash_map<Term, std::vector<std::uint32_t>> by_predicate_;
  absl::flat_hash_map<Term, std::vector<std::uint32_t>> by_object_;
  std::vector<Term> terms_;
  absl::flat_hash_map<Term, std::size_t> term_pos_;
  std::vector<Triple> pending_;
};

std::string encode(const Triple& t) {
  std::string out;
  for (Term x : {t.subject, t.predicate, t.object}) {
    out += x.is_iri() ? 'I' : 'L';
    out += x.lexical();
    out += '\0';
  }
  return out;
}

}  // namespace

std::vector<Triple> derive(std::span<const Rule> rules, const NGFamily& n) {
  return Engine(n).run(rules);
}

Term derived_name(const ReasonerId& reasoner, const Triple& t) {
  return Term::iri("urn:derived:" + short_digest(reasoner.iri.lexical()) + ":" +
                   short_digest(encode(t)));
}

NGFamily apply(std::span<const Rule> rules, const NGFamily& n, const ReasonerId& reasoner) {
  if (rules.empty()) return n;
  absl::flat_hash_set<Triple> present;
  for (const auto& a : n) present.insert(a.triple);

  std::vector<Assignment> added;
  for (const Triple& t : derive(rules, n)) {
    if (present.contains(t)) continue;
    added.push_back({derived_name(reasoner, t), t});
  }
  if (added.empty()) return n;
  return join(n, NGFamily::from_assignments(std::move(added)));
}

DeltaReport diff(const NGFamily& n, const NGFamily& n2) {
  DeltaReport report;
  auto i = n.begin();
  auto j = n2.begin();
  while (i != n.end() || j != n2.end()) {
    if (j == n2.end() || (i != n.end() && i->name < j->name)) {
      report.deleted.push_back((i++)->name);
    } else if (i == n.end() || j->name < i->name) {
      report.created.push_back((j++)->name);
    } else {
      if (i->triple != j->triple) report.updated.push_back(i->name);
      ++i;
      ++j;
    }
  }
  return report;
}

NGFamily with_tracking(const ReasonerId& id, const Reasoner& gamma, const NGFamily& n) {
  NGFamily out = gamma(n);
  const DeltaReport delta = diff(n, out);
  std::vector<Assignment> tags;
  auto tag = [&](Term kind, const std::vector<Term>& names) {
    for (Term x : names) {
      const Triple t{id.iri, kind, x};
      tags.push_back({derived_name(id, t), t});
    }
  };
  tag(vocab::created(), delta.created);
  tag(vocab::updated(), delta.updated);
  tag(vocab::deleted(), delta.deleted);
  if (tags.empty()) return out;
  return rename_join(out, NGFamily::from_assignments(std::move(tags))).family;
}

NGFamily infer_uses(const NGFamily& n) {
  static const std::vector<Rule> rules = uses_rules();
  return apply(rules, n, {Term::iri("urn:ngstrat:uses")});
}

bool check_well_behaved(const ReasonerId&, const Reasoner& gamma,
                        std::span<const NGFamily> samples) {
  for (const auto& sample : samples) {
    if (!check_batch(sample)) {
      throw std::invalid_argument("sample is not well-stratified");
    }
    if (!check_batch(gamma(sample))) return false;
  }
  return true;
}

}  // namespace ngstrat
