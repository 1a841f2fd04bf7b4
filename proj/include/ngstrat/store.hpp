#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/inlined_vector.h"
#include "ngstrat/dyadic.hpp"
#include "ngstrat/family.hpp"

namespace ngstrat {

/// Map from terms to dyadic values in [0, 1), kept as a list of the
/// distinct values in increasing order. Terms sharing a value share one
/// cell. Every new value is placed next to a known neighbour, so the least
/// value above a term's value is one step along the list.
class OrderMap {
 public:
  /// Pointers stay valid until the next modification.
  [[nodiscard]] const Dyadic* find(Term t) const;
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] std::size_t distinct_values() const noexcept { return cells_.size() - free_.size(); }

  /// Least stored value strictly above the value of `anchor` (above 0 when
  /// there is no anchor), or nullptr when there is none (read as 1).
  [[nodiscard]] const Dyadic* successor(std::optional<Term> anchor) const;

  /// Gives t the value 0.
  void assign_zero(Term t);
  /// Gives t the value v, which must lie strictly between the value of
  /// `after` (0 without one) and its successor.
  void insert_after(std::optional<Term> after, Term t, const Dyadic& v);
  /// Gives t the value `like` already has.
  void assign_same(Term t, Term like);
  void clear();

  /// Respreads the values in an aligned interval around the value of
  /// `anchor`, on a grid of `grid_bits` bits where possible, so that none
  /// needs more than `cap_bits` bits and the anchor gains room above it.
  /// Order among all values is preserved exactly. Returns false when even
  /// [0, 1) is too crowded.
  bool make_room(std::optional<Term> anchor, unsigned grid_bits, unsigned cap_bits);

  /// Hints that t is about to be looked up.
  void prefetch(Term t) const { terms_.prefetch(t); }

  /// Snapshot of every term's value.
  [[nodiscard]] absl::flat_hash_map<Term, Dyadic> values() const;

  /// Reads and writes of the ordered list since the last reset.
  [[nodiscard]] std::size_t index_operations() const noexcept { return index_ops_; }
  void reset_index_operations() const noexcept { index_ops_ = 0; }

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;

  struct Cell {
    Dyadic value;
    std::uint32_t refs = 0;
    std::uint32_t prev = kNil;
    std::uint32_t next = kNil;
  };

  std::uint32_t cell_of(std::optional<Term> t) const;
  std::uint32_t link_after(std::uint32_t at, const Dyadic& v);
  void bind(Term t, std::uint32_t cell);
  void release(std::uint32_t cell);

  absl::flat_hash_map<Term, std::uint32_t> terms_;
  std::vector<Cell> cells_;
  std::vector<std::uint32_t> free_;
  std::uint32_t head_ = kNil;
  std::uint32_t zero_ = kNil;
  mutable std::size_t index_ops_ = 0;
};

/// What the literal three-case analysis does when the name already sits
/// below one of its components.
enum class CaseAPolicy {
  /// Search the name's referrers at or below the components' maximum; reject
  /// only on a genuine cycle, otherwise lift that region above the maximum.
  verify,
  /// Reject outright. Sound but incomplete: it also rejects some inserts
  /// that keep the family acyclic.
  reject_immediately,
};

struct StoreOptions {
  CaseAPolicy case_a = CaseAPolicy::verify;
  /// Values needing more bits than this trigger a local relabel, or a full
  /// level-based repack when no local interval has room.
  unsigned exponent_cap = 512;
};

enum class InsertCase {
  fresh,      // name did not occur yet
  promoted,   // (b) name sat exactly at the components' maximum
  unchanged,  // (c) name already above its components
  relocated,  // (a) name below a component, no cycle: region lifted
};

enum class Rejection {
  cycle,           // (a) with a genuine cycle (or the literal policy)
  self_reference,  // the name occurs in its own triple
};

struct InsertResult {
  bool accepted = false;
  InsertCase kind = InsertCase::fresh;
  Rejection rejection = Rejection::cycle;
  /// For rejections: a dependency cycle the insert would close, starting at
  /// the inserted name. Empty under CaseAPolicy::reject_immediately.
  std::vector<Term> cycle;

  explicit operator bool() const noexcept { return accepted; }
};

struct StoreCounters {
  std::size_t inserts = 0;
  std::size_t rejections = 0;
  std::size_t relocations = 0;
  std::size_t relocated_terms = 0;
  /// Inserts whose values would have exceeded the exponent cap.
  std::size_t repacks = 0;
  /// Of those, the ones that fell back to a full level-based repack.
  std::size_t global_repacks = 0;
};

/// A well-stratified family together with its order map, maintained under
/// single insertions and deletions.
///
/// Not thread-safe: a single writer at a time.
class StratifiedStore {
 public:
  explicit StratifiedStore(StoreOptions options = {});

  /// Replays the assignments of n in topological order. Throws CycleError.
  static StratifiedStore order_init(const NGFamily& n, StoreOptions options = {});

  /// Throws DuplicateName if `name` is already assigned, std::invalid_argument
  /// if name or predicate is not an IRI.
  InsertResult try_insert(Term name, const Triple& triple);

  /// Throws UnknownName. Order-map entries are kept.
  void remove(Term name);

  /// Rebuilds the order map from the current family, dropping stale entries.
  void rebuild();

  [[nodiscard]] NGFamily family() const;
  [[nodiscard]] std::size_t size() const noexcept { return assignments_.size(); }
  [[nodiscard]] bool contains(Term name) const { return assignments_.contains(name); }
  [[nodiscard]] const Triple* find(Term name) const;

  [[nodiscard]] const OrderMap& order() const noexcept { return order_; }
  [[nodiscard]] std::optional<Dyadic> value(Term t) const;

  [[nodiscard]] std::size_t deletions_since_rebuild() const noexcept { return deletions_; }
  [[nodiscard]] const StoreCounters& counters() const noexcept { return counters_; }
  [[nodiscard]] const StoreOptions& options() const noexcept { return options_; }

  /// Full scan: every assigned name strictly above each of its components,
  /// and every occurring term mapped.
  [[nodiscard]] bool dominance_holds() const;

 private:
  using Referrers = absl::InlinedVector<Term, 2>;

  struct Plan;
  std::optional<Plan> plan_insert(Term name, const Triple& triple, InsertResult& result);
  std::vector<Term> cycle_through(Term name, Term component,
                                  const absl::flat_hash_map<Term, Term>& parent) const;
  void repack();
  void link(Term name, const Triple& triple);
  void unlink(Term name, const Triple& triple);

  StoreOptions options_;
  absl::flat_hash_map<Term, Triple> assignments_;
  absl::flat_hash_map<Term, Referrers> referrers_;
  OrderMap order_;
  std::size_t deletions_ = 0;
  StoreCounters counters_;
};

}  // namespace ngstrat
