#include "ngstrat/family.hpp"

#include <algorithm>
#include <stdexcept>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "ngstrat/errors.hpp"

namespace ngstrat {
namespace {

bool name_less(const Assignment& a, const Assignment& b) { return a.name < b.name; }

void check_shape(const Assignment& a) {
  if (!a.name.is_iri()) throw std::invalid_argument("assignment name must be an IRI");
  if (!a.triple.predicate.is_iri()) throw std::invalid_argument("predicate must be an IRI");
  if (!a.triple.subject.valid() || !a.triple.object.valid()) {
    throw std::invalid_argument("subject and object must be valid terms");
  }
}

}  // namespace

NGFamily NGFamily::from_assignments(std::vector<Assignment> assignments) {
  for (const auto& a : assignments) check_shape(a);
  std::stable_sort(assignments.begin(), assignments.end(), name_less);

  std::vector<Term> conflicts;
  std::size_t out = 0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (out > 0 && assignments[out - 1].name == assignments[i].name) {
      if (assignments[out - 1].triple != assignments[i].triple &&
          (conflicts.empty() || conflicts.back() != assignments[i].name)) {
        conflicts.push_back(assignments[i].name);
      }
      continue;
    }
    assignments[out++] = assignments[i];
  }
  if (!conflicts.empty()) throw ConflictError(std::move(conflicts));
  assignments.resize(out);
  return NGFamily(sorted_tag{}, std::move(assignments));
}

const Triple* NGFamily::find(Term name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const Assignment& a, Term t) { return a.name < t; });
  if (it == entries_.end() || it->name != name) return nullptr;
  return &it->triple;
}

std::vector<Term> NGFamily::vocabulary() const {
  std::vector<Term> terms;
  terms.reserve(entries_.size() * 4);
  for (const auto& a : entries_) {
    terms.insert(terms.end(), {a.name, a.triple.subject, a.triple.predicate, a.triple.object});
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

void RenamingMap::insert(Term from, Term to) {
  if (auto it = entries_.find(from); it != entries_.end()) {
    if (it->second == to) return;
    throw RenameError("term renamed twice: " + std::string(from.lexical()));
  }
  if (targets_.contains(to)) {
    throw RenameError("renaming is not injective at " + std::string(to.lexical()));
  }
  entries_.emplace(from, to);
  targets_.emplace(to, from);
}

Term RenamingMap::operator()(Term t) const {
  auto it = entries_.find(t);
  return it == entries_.end() ? t : it->second;
}

RenamingMap RenamingMap::inverse() const {
  RenamingMap inv;
  inv.entries_ = targets_;
  inv.targets_ = entries_;
  return inv;
}

NGFamily atomic(Term name, Term subject, Term predicate, Term object) {
  return NGFamily::from_assignments({{name, {subject, predicate, object}}});
}

std::vector<Term> support(const NGFamily& n) {
  std::vector<Term> names;
  names.reserve(n.size());
  for (const auto& a : n) names.push_back(a.name);
  return names;
}

std::vector<Term> conflict_set(const NGFamily& n1, const NGFamily& n2) {
  std::vector<Term> out;
  auto i = n1.begin();
  auto j = n2.begin();
  while (i != n1.end() && j != n2.end()) {
    if (i->name < j->name) {
      ++i;
    } else if (j->name < i->name) {
      ++j;
    } else {
      if (i->triple != j->triple) out.push_back(i->name);
      ++i;
      ++j;
    }
  }
  return out;
}

NGFamily rename(const NGFamily& n, const RenamingMap& sigma) {
  if (sigma.is_identity()) return n;

  absl::flat_hash_map<Term, Term> image_of;
  for (Term t : n.vocabulary()) {
    const Term mapped = sigma(t);
    auto [it, inserted] = image_of.emplace(mapped, t);
    if (!inserted && it->second != t) {
      throw RenameError("renaming is not injective: " + std::string(t.lexical()) + " and " +
                        std::string(it->second.lexical()) + " both map to " +
                        std::string(mapped.lexical()));
    }
  }

  std::vector<Assignment> renamed;
  renamed.reserve(n.size());
  for (const auto& a : n) {
    Assignment r{sigma(a.name),
                 {sigma(a.triple.subject), sigma(a.triple.predicate), sigma(a.triple.object)}};
    if (!r.name.is_iri() || !r.triple.predicate.is_iri()) {
      throw RenameError("renaming maps a name or predicate to a literal");
    }
    renamed.push_back(r);
  }
  return NGFamily::from_assignments(std::move(renamed));
}

bool extends(const NGFamily& n, const NGFamily& n2) {
  if (n.size() > n2.size()) return false;
  auto j = n2.begin();
  for (const auto& a : n) {
    while (j != n2.end() && j->name < a.name) ++j;
    if (j == n2.end() || j->name != a.name || j->triple != a.triple) return false;
  }
  return true;
}

bool equiv(const NGFamily& n, const NGFamily& n2) { return extends(n, n2) && extends(n2, n); }

NGFamily canonicalize(const NGFamily& n) { return n; }

}  // namespace ngstrat
