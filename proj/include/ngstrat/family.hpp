#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ngstrat/term.hpp"

namespace ngstrat {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Triple& t) {
    return H::combine(std::move(h), t.subject, t.predicate, t.object);
  }
};

struct Assignment {
  Term name;
  Triple triple;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// A finite partial map from names (IRIs) to triples.
///
/// Stored canonically: entries sorted by name handle, vocabulary implicit in
/// the assignments. Values are immutable once built.
class NGFamily {
 public:
  using const_iterator = std::vector<Assignment>::const_iterator;

  NGFamily() = default;

  /// Builds a family from arbitrary assignments. Repeated identical
  /// assignments collapse; the same name bound to two different triples
  /// throws ConflictError. Names and predicates must be IRIs.
  static NGFamily from_assignments(std::vector<Assignment> assignments);

  [[nodiscard]] const Triple* find(Term name) const;
  [[nodiscard]] bool contains(Term name) const { return find(name) != nullptr; }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::span<const Assignment> assignments() const noexcept { return entries_; }
  [[nodiscard]] const_iterator begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return entries_.end(); }

  /// Every term occurring in some assignment (names included), sorted by handle.
  [[nodiscard]] std::vector<Term> vocabulary() const;

  friend bool operator==(const NGFamily&, const NGFamily&) = default;

 private:
  struct sorted_tag {};
  NGFamily(sorted_tag, std::vector<Assignment> sorted) : entries_(std::move(sorted)) {}
  friend class FamilyBuilder;

  std::vector<Assignment> entries_;
};

/// Appends assignments already known to be in handle order with distinct
/// names; used by the merge-join operators.
class FamilyBuilder {
 public:
  void reserve(std::size_t n) { entries_.reserve(n); }
  void push(const Assignment& a) { entries_.push_back(a); }
  NGFamily build() && { return NGFamily(NGFamily::sorted_tag{}, std::move(entries_)); }

 private:
  std::vector<Assignment> entries_;
};

/// An injective term substitution, identity outside its explicit entries.
class RenamingMap {
 public:
  RenamingMap() = default;

  /// Adds from -> to. Throws RenameError if `from` is already mapped
  /// elsewhere or `to` is already a target of another entry.
  void insert(Term from, Term to);

  [[nodiscard]] Term operator()(Term t) const;
  [[nodiscard]] bool is_identity() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const std::map<Term, Term>& entries() const noexcept { return entries_; }
  [[nodiscard]] RenamingMap inverse() const;

  friend bool operator==(const RenamingMap&, const RenamingMap&) = default;

 private:
  std::map<Term, Term> entries_;
  std::map<Term, Term> targets_;
};

NGFamily atomic(Term name, Term subject, Term predicate, Term object);

/// Names on which `n` is defined, in handle order.
std::vector<Term> support(const NGFamily& n);

/// Names assigned by both families to different triples, in handle order.
std::vector<Term> conflict_set(const NGFamily& n1, const NGFamily& n2);

/// n[sigma]. Throws RenameError if sigma is not injective on the vocabulary
/// of n or maps a name/predicate to a literal.
NGFamily rename(const NGFamily& n, const RenamingMap& sigma);

/// n ⊑ n2: every assignment of n appears identically in n2.
bool extends(const NGFamily& n, const NGFamily& n2);

bool equiv(const NGFamily& n, const NGFamily& n2);

/// Minimal representative of the equivalence class of n.
NGFamily canonicalize(const NGFamily& n);

}  // namespace ngstrat
