#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ngstrat/family.hpp"

namespace ngstrat {

/// IRIs the built-in rules and the change-tracking reasoners talk about.
namespace vocab {
Term predicate();
Term transitive();
Term reflexive();
Term symmetric();
Term reverse();
Term created();  // new
Term updated();  // upd
Term deleted();  // del
Term uses();
}  // namespace vocab

/// A rule argument: a variable (`?name`) or a constant term.
class RuleTerm {
 public:
  static RuleTerm var(std::string name);
  static RuleTerm constant(Term t);

  [[nodiscard]] bool is_variable() const noexcept { return !constant_.valid(); }
  [[nodiscard]] const std::string& variable() const noexcept { return variable_; }
  [[nodiscard]] Term constant() const noexcept { return constant_; }

  friend bool operator==(const RuleTerm&, const RuleTerm&) = default;

 private:
  std::string variable_;
  Term constant_;
};

enum class AtomKind {
  derived,     // (s, p, o): matches any triple derivable so far
  named,       // named(x, s, p, o): matches explicit assignments x ↦ (s, p, o)
  vocabulary,  // term(t): t occurs in some derivable triple
};

struct Atom {
  AtomKind kind = AtomKind::derived;
  std::vector<RuleTerm> args;

  static Atom derived(RuleTerm s, RuleTerm p, RuleTerm o);
  static Atom named(RuleTerm x, RuleTerm s, RuleTerm p, RuleTerm o);
  static Atom term(RuleTerm t);

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Horn rule over triples. Heads are derived atoms whose variables all occur
/// in the body; there is no negation.
class Rule {
 public:
  /// Throws RuleError on a non-derived head, wrong arity, or an unbound head
  /// variable.
  Rule(std::vector<Atom> body, Atom head, std::string label = {});

  [[nodiscard]] const std::vector<Atom>& body() const noexcept { return body_; }
  [[nodiscard]] const Atom& head() const noexcept { return head_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }

 private:
  std::vector<Atom> body_;
  Atom head_;
  std::string label_;
};

/// The IRI a reasoner is cited by.
struct ReasonerId {
  Term iri;
};

using Reasoner = std::function<NGFamily(const NGFamily&)>;

/// Transitive, reflexive, symmetric and reverse closure rules plus the
/// axiom (reverse, predicate, symmetric). The reflexive rule ranges over
/// terms occurring in derivable triples.
std::vector<Rule> builtin_closure_rules();

/// The two rules inferring (g, uses, d) from a (g, new, y) tag and an
/// assignment y ↦ (d, new|upd, z).
std::vector<Rule> uses_rules();

/// Least set of triples containing the triples of n and closed under the
/// rules (semi-naive evaluation). Sorted.
std::vector<Triple> derive(std::span<const Rule> rules, const NGFamily& n);

/// `urn:derived:<digest of reasoner>:<digest of triple>`.
Term derived_name(const ReasonerId& reasoner, const Triple& t);

/// n plus one freshly named assignment per derived triple that no
/// assignment of n already carries.
NGFamily apply(std::span<const Rule> rules, const NGFamily& n,
               const ReasonerId& reasoner = {Term::iri("urn:ngstrat:apply")});

struct DeltaReport {
  std::vector<Term> created;
  std::vector<Term> updated;
  std::vector<Term> deleted;

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

/// Names created, updated and deleted going from n to n2.
DeltaReport diff(const NGFamily& n, const NGFamily& n2);

/// gamma(n) ⊞ {(id, new|upd|del, x)} for every change gamma made.
NGFamily with_tracking(const ReasonerId& id, const Reasoner& gamma, const NGFamily& n);

/// n extended by the uses rules.
NGFamily infer_uses(const NGFamily& n);

/// Whether gamma keeps every (well-stratified) sample well-stratified.
/// Throws std::invalid_argument on a sample that is not well-stratified.
bool check_well_behaved(const ReasonerId& id, const Reasoner& gamma,
                        std::span<const NGFamily> samples);

}  // namespace ngstrat
