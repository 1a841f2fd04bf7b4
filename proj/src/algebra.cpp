#include "ngstrat/algebra.hpp"

#include <stdexcept>
#include <string>

#include "absl/container/flat_hash_set.h"
#include "ngstrat/errors.hpp"

namespace ngstrat {
namespace {

enum class Side { left, right, both_equal, both_conflict };

// Merge-joins two families in name order and calls f(side, left*, right*).
template <typename F>
void merge_walk(const NGFamily& n1, const NGFamily& n2, F&& f) {
  auto i = n1.begin();
  auto j = n2.begin();
  while (i != n1.end() || j != n2.end()) {
    if (j == n2.end() || (i != n1.end() && i->name < j->name)) {
      f(Side::left, &*i, nullptr);
      ++i;
    } else if (i == n1.end() || j->name < i->name) {
      f(Side::right, nullptr, &*j);
      ++j;
    } else {
      f(i->triple == j->triple ? Side::both_equal : Side::both_conflict, &*i, &*j);
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::optional<ConflictPolicy> parse_policy(std::string_view name) {
  if (name == "left") return ConflictPolicy::keep_left;
  if (name == "right") return ConflictPolicy::keep_right;
  if (name == "drop") return ConflictPolicy::drop_both;
  if (name == "rename") return ConflictPolicy::rename_both;
  return std::nullopt;
}

NGFamily meet(const NGFamily& n1, const NGFamily& n2) {
  FamilyBuilder out;
  merge_walk(n1, n2, [&](Side side, const Assignment* a, const Assignment*) {
    if (side == Side::both_equal) out.push(*a);
  });
  return std::move(out).build();
}

NGFamily meet(std::span<const NGFamily> families) {
  if (families.empty()) throw std::invalid_argument("meet of an empty set of families");
  NGFamily acc = families.front();
  for (const auto& n : families.subspan(1)) acc = meet(acc, n);
  return acc;
}

NGFamily join(const NGFamily& n1, const NGFamily& n2) {
  FamilyBuilder out;
  out.reserve(n1.size() + n2.size());
  std::vector<Term> conflicts;
  merge_walk(n1, n2, [&](Side side, const Assignment* a, const Assignment* b) {
    switch (side) {
      case Side::left:
      case Side::both_equal:
        out.push(*a);
        break;
      case Side::right:
        out.push(*b);
        break;
      case Side::both_conflict:
        conflicts.push_back(a->name);
        break;
    }
  });
  if (!conflicts.empty()) throw ConflictError(std::move(conflicts));
  return std::move(out).build();
}

NGFamily override_left(const NGFamily& n1, const NGFamily& n2) {
  FamilyBuilder out;
  out.reserve(n1.size() + n2.size());
  merge_walk(n1, n2, [&](Side side, const Assignment* a, const Assignment* b) {
    out.push(side == Side::right ? *b : *a);
  });
  return std::move(out).build();
}

NGFamily override_right(const NGFamily& n1, const NGFamily& n2) { return override_left(n2, n1); }

NGFamily drop_conflicting(const NGFamily& n1, const NGFamily& n2) {
  FamilyBuilder out;
  out.reserve(n1.size() + n2.size());
  merge_walk(n1, n2, [&](Side side, const Assignment* a, const Assignment* b) {
    if (side == Side::both_conflict) return;
    out.push(side == Side::right ? *b : *a);
  });
  return std::move(out).build();
}

RenameJoin rename_join(const NGFamily& n1, const NGFamily& n2) {
  auto conflicts = conflict_set(n1, n2);
  if (conflicts.empty()) return {join(n1, n2), {}, {}};

  absl::flat_hash_set<std::string_view> taken;
  for (const auto* n : {&n1, &n2}) {
    for (const auto& a : *n) {
      for (Term t : {a.name, a.triple.subject, a.triple.predicate, a.triple.object}) {
        if (t.is_iri()) taken.insert(t.lexical());
      }
    }
  }

  // Renaming u everywhere can make a shared assignment that mentions u
  // differ between the operands; such names are doubled as well, until the
  // renamed operands agree.
  RenamingMap sigma[2];
  while (!conflicts.empty()) {
    for (Term u : conflicts) {
      for (int i = 0; i < 2; ++i) {
        std::string fresh = std::string(u.lexical()) + "#~" + std::to_string(i + 1);
        while (taken.contains(fresh)) fresh += '~';
        const Term renamed = Term::iri(fresh);
        taken.insert(renamed.lexical());
        sigma[i].insert(u, renamed);
      }
    }
    conflicts = conflict_set(rename(n1, sigma[0]), rename(n2, sigma[1]));
  }
  NGFamily joined = join(rename(n1, sigma[0]), rename(n2, sigma[1]));
  return {std::move(joined), std::move(sigma[0]), std::move(sigma[1])};
}

NGFamily merge(const NGFamily& n1, const NGFamily& n2, ConflictPolicy policy) {
  switch (policy) {
    case ConflictPolicy::keep_left:
      return override_left(n1, n2);
    case ConflictPolicy::keep_right:
      return override_right(n1, n2);
    case ConflictPolicy::drop_both:
      return drop_conflicting(n1, n2);
    case ConflictPolicy::rename_both:
      return rename_join(n1, n2).family;
  }
  throw std::logic_error("unknown conflict policy");
}

NGFamily merge(std::span<const NGFamily> families, ConflictPolicy policy) {
  if (families.empty()) throw std::invalid_argument("merge of an empty set of families");
  NGFamily acc = families.front();
  for (const auto& n : families.subspan(1)) acc = merge(acc, n, policy);
  return acc;
}

}  // namespace ngstrat
