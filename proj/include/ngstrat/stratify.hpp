#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "ngstrat/family.hpp"

namespace ngstrat {

/// Nodes are the names of a family; x -> y when y is assigned and occurs in
/// x's triple. Out-degree is at most three.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  explicit DependencyGraph(const NGFamily& n);

  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] Term node(std::uint32_t i) const { return nodes_[i]; }
  [[nodiscard]] std::span<const Term> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::optional<std::uint32_t> index_of(Term name) const;

  [[nodiscard]] std::span<const std::uint32_t> successors(std::uint32_t i) const {
    return {adjacency_[i].targets, adjacency_[i].count};
  }

  /// Hints that node i's successors are about to be read.
  void prefetch(std::uint32_t i) const { __builtin_prefetch(&adjacency_[i]); }

  /// All edges as (from, to) pairs, in node order.
  [[nodiscard]] std::vector<std::pair<Term, Term>> edges() const;

 private:
  // A triple has at most three distinct components, so each node's edges
  // fit in one fixed record and a traversal touches one cache line per node.
  struct Adjacency {
    std::uint32_t targets[3];
    std::uint32_t count;
  };

  std::vector<Term> nodes_;
  std::vector<Adjacency> adjacency_;
  std::size_t edge_count_ = 0;
};

DependencyGraph dependency_graph(const NGFamily& n);

/// Outcome of the batch check: `ok`, or a directed cycle x1 -> ... -> xk -> x1.
struct CheckReport {
  bool ok = true;
  std::vector<Term> cycle;

  explicit operator bool() const noexcept { return ok; }
};

/// Instrumentation for the depth-first traversal.
struct TraversalStats {
  /// One per node entry plus one per node exit.
  std::size_t node_visits = 0;
};

/// Linear-time acyclicity check of the dependency graph. On failure, the
/// reported cycle is the first one met by a DFS that takes roots and
/// successors in lexical order.
CheckReport check_batch(const NGFamily& n, TraversalStats* stats = nullptr);

/// Names in an order where every assigned component precedes the names that
/// mention it, or the first cycle if there is none.
std::optional<std::vector<Term>> topological_order(const NGFamily& n,
                                                   TraversalStats* stats = nullptr);

/// A stage: natural-number levels for terms.
class LevelAssignment {
 public:
  void set(Term t, std::uint64_t level) { levels_[t] = level; }
  [[nodiscard]] std::optional<std::uint64_t> get(Term t) const;
  [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
  [[nodiscard]] bool empty() const noexcept { return levels_.empty(); }

  [[nodiscard]] const absl::flat_hash_map<Term, std::uint64_t>& entries() const noexcept {
    return levels_;
  }

  /// Entries sorted by lexical term order.
  [[nodiscard]] std::vector<std::pair<Term, std::uint64_t>> sorted() const;

  friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;

 private:
  absl::flat_hash_map<Term, std::uint64_t> levels_;
};

/// Least solution of level(x) > level(a), level(b), level(c) for every
/// x ↦ (a,b,c): unassigned terms sit at 0 and names at one above their
/// highest component. Throws CycleError when no solution exists.
LevelAssignment infer_levels(const NGFamily& n);

/// Whether `levels` covers every occurring term and strictly orders each
/// name above its components.
bool verify_levels(const NGFamily& n, const LevelAssignment& levels);

/// Assignments whose name sits at level <= max_level. Throws CycleError.
NGFamily slice(const NGFamily& n, std::uint64_t max_level);

}  // namespace ngstrat
