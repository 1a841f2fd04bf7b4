#pragma once

#include <span>
#include <string_view>
#include <optional>

#include "ngstrat/family.hpp"

namespace ngstrat {

/// Resolution policy for names assigned differently by two operands.
enum class ConflictPolicy {
  keep_left,    // ▷
  keep_right,   // ◁
  drop_both,    // ◁▷
  rename_both,  // ⊞
};

std::optional<ConflictPolicy> parse_policy(std::string_view name);

/// ⊓S. Throws std::invalid_argument on an empty set.
NGFamily meet(std::span<const NGFamily> families);
NGFamily meet(const NGFamily& n1, const NGFamily& n2);

/// n1 ⊔ n2, defined only when the conflict set is empty; otherwise throws
/// ConflictError carrying the conflict set.
NGFamily join(const NGFamily& n1, const NGFamily& n2);

/// n1 ▷ n2: n1 wins on conflicts.
NGFamily override_left(const NGFamily& n1, const NGFamily& n2);

/// n1 ◁ n2 = n2 ▷ n1.
NGFamily override_right(const NGFamily& n1, const NGFamily& n2);

/// n1 ◁▷ n2: conflicting names are dropped from both sides.
NGFamily drop_conflicting(const NGFamily& n1, const NGFamily& n2);

struct RenameJoin {
  NGFamily family;
  RenamingMap left;
  RenamingMap right;
};

/// n1 ⊞ n2 = n1[σ1] ⊔ n2[σ2]. A conflicting name `u` from operand i becomes
/// `u#~i` (with extra `~` appended until the IRI occurs in neither operand),
/// and is renamed in every position of that operand.
RenameJoin rename_join(const NGFamily& n1, const NGFamily& n2);

/// Binary surrogate join selected by policy.
NGFamily merge(const NGFamily& n1, const NGFamily& n2, ConflictPolicy policy);

/// Left fold of the binary surrogate; throws std::invalid_argument when empty.
NGFamily merge(std::span<const NGFamily> families, ConflictPolicy policy);

}  // namespace ngstrat
