#include "ngstrat/stratify.hpp"

#include <algorithm>
#include <bit>

#include "absl/container/flat_hash_map.h"

#include "ngstrat/errors.hpp"

namespace ngstrat {
namespace {

enum Color : std::uint8_t { white, gray, black };

constexpr std::uint32_t kNoNode = 0xffffffffu;

struct Frame {
  std::uint32_t node;
  std::uint32_t next;
};

// Two bits of state per node, kept as bitsets so the state of a large
// graph stays in cache: entered, and finished. Entered but not finished is
// "on the current path".
class NodeStates {
 public:
  explicit NodeStates(std::size_t n) : entered_((n + 63) / 64, 0), finished_((n + 63) / 64, 0) {}
  bool entered(std::uint32_t v) const { return test(entered_, v); }
  bool on_path(std::uint32_t v) const { return test(entered_, v) && !test(finished_, v); }
  void enter(std::uint32_t v) { entered_[v / 64] |= bit(v); }
  void finish(std::uint32_t v) { finished_[v / 64] |= bit(v); }

 private:
  static std::uint64_t bit(std::uint32_t v) { return std::uint64_t{1} << (v % 64); }
  static bool test(const std::vector<std::uint64_t>& set, std::uint32_t v) {
    return (set[v / 64] & bit(v)) != 0;
  }
  std::vector<std::uint64_t> entered_;
  std::vector<std::uint64_t> finished_;
};

// Iterative DFS over all roots in index order. Appends finished nodes to
// `postorder` when given. Returns false on the first back edge.
bool dfs_postorder(const DependencyGraph& g, TraversalStats* stats,
                   std::vector<std::uint32_t>* postorder) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  NodeStates state(n);
  std::vector<Frame> stack;
  std::size_t visits = 0;
  if (postorder) postorder->reserve(n);
  // Successors sit at random places in a large graph; requesting all of a
  // node's successor records on entry overlaps their cache misses.
  auto push = [&](std::uint32_t v) {
    state.enter(v);
    ++visits;
    stack.push_back({v, 0});
    for (std::uint32_t w : g.successors(v)) g.prefetch(w);
  };

  for (std::uint32_t root = 0; root < n; ++root) {
    if (state.entered(root)) continue;
    push(root);
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto succ = g.successors(top.node);
      if (top.next < succ.size()) {
        const std::uint32_t v = succ[top.next++];
        if (state.on_path(v)) {
          if (stats) stats->node_visits += visits;
          return false;
        }
        if (!state.entered(v)) push(v);
      } else {
        state.finish(top.node);
        ++visits;
        if (postorder) postorder->push_back(top.node);
        stack.pop_back();
      }
    }
  }
  if (stats) stats->node_visits += visits;
  return true;
}

// Deterministic cycle search: roots and successors in lexical order.
std::vector<Term> first_lexical_cycle(const DependencyGraph& g, TraversalStats* stats) {
  const auto n = static_cast<std::uint32_t>(g.node_count());
  const LexicalLess less;
  auto by_name = [&](std::uint32_t a, std::uint32_t b) { return less(g.node(a), g.node(b)); };

  std::vector<std::uint32_t> roots(n);
  for (std::uint32_t i = 0; i < n; ++i) roots[i] = i;
  std::sort(roots.begin(), roots.end(), by_name);

  std::vector<Color> color(n, white);
  std::vector<Frame> stack;
  std::vector<std::vector<std::uint32_t>> sorted_succ(n);

  auto enter = [&](std::uint32_t v) {
    color[v] = gray;
    if (stats) ++stats->node_visits;
    auto s = g.successors(v);
    sorted_succ[v].assign(s.begin(), s.end());
    std::sort(sorted_succ[v].begin(), sorted_succ[v].end(), by_name);
    stack.push_back({v, 0});
  };

  for (std::uint32_t root : roots) {
    if (color[root] != white) continue;
    enter(root);
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& succ = sorted_succ[top.node];
      if (top.next < succ.size()) {
        const std::uint32_t v = succ[top.next++];
        if (color[v] == gray) {
          std::vector<Term> cycle;
          auto it = std::find_if(stack.begin(), stack.end(),
                                 [v](const Frame& f) { return f.node == v; });
          for (; it != stack.end(); ++it) cycle.push_back(g.node(it->node));
          return cycle;
        }
        if (color[v] == white) enter(v);
      } else {
        color[top.node] = black;
        if (stats) ++stats->node_visits;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

DependencyGraph::DependencyGraph(const NGFamily& n) {
  const std::size_t count = n.size();
  nodes_.reserve(count);
  for (const auto& a : n) nodes_.push_back(a.name);
  adjacency_.resize(count);
  if (count == 0) return;

  // Names come in handle order, so a name's index is its rank among the
  // names' handles. When the handles are dense (the usual case: a
  // document's names are interned together) a rank bitmap over the handle
  // range answers lookups from a table small enough to stay in cache;
  // otherwise fall back to a hash map.
  struct Block {
    std::uint64_t bits;
    std::uint32_t before;
  };
  const std::uint32_t low = nodes_.front().handle();
  const std::uint32_t high = nodes_.back().handle();
  const std::size_t range = (high - low) / 2 + 1;  // IRI handles are even
  std::vector<Block> blocks;
  absl::flat_hash_map<std::uint32_t, std::uint32_t> sparse;
  const bool dense = range <= 64 * count + 64;
  if (dense) {
    blocks.assign((range + 63) / 64, Block{0, 0});
    for (Term t : nodes_) {
      const std::size_t pos = (t.handle() - low) / 2;
      blocks[pos / 64].bits |= std::uint64_t{1} << (pos % 64);
    }
    std::uint32_t before = 0;
    for (Block& b : blocks) {
      b.before = before;
      before += static_cast<std::uint32_t>(std::popcount(b.bits));
    }
  } else {
    sparse.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) sparse.emplace(nodes_[i].handle(), i);
  }
  auto lookup = [&](Term t) -> std::uint32_t {
    const std::uint32_t h = t.handle();
    if (!t.is_iri() || h < low || h > high) return kNoNode;
    if (dense) {
      const std::size_t pos = (h - low) / 2;
      const Block& b = blocks[pos / 64];
      const std::uint64_t bit = std::uint64_t{1} << (pos % 64);
      if ((b.bits & bit) == 0) return kNoNode;
      return b.before + static_cast<std::uint32_t>(std::popcount(b.bits & (bit - 1)));
    }
    auto it = sparse.find(h);
    return it == sparse.end() ? kNoNode : it->second;
  };

  std::uint32_t i = 0;
  for (const auto& a : n) {
    Adjacency& adj = adjacency_[i++];
    adj.count = 0;
    for (Term t : {a.triple.subject, a.triple.predicate, a.triple.object}) {
      const std::uint32_t v = lookup(t);
      if (v == kNoNode || std::find(adj.targets, adj.targets + adj.count, v) != adj.targets + adj.count) {
        continue;
      }
      adj.targets[adj.count++] = v;
    }
    edge_count_ += adj.count;
  }
}

std::optional<std::uint32_t> DependencyGraph::index_of(Term name) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end() || *it != name) return std::nullopt;
  return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::vector<std::pair<Term, Term>> DependencyGraph::edges() const {
  std::vector<std::pair<Term, Term>> out;
  out.reserve(edge_count_);
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    for (std::uint32_t j : successors(i)) out.emplace_back(nodes_[i], nodes_[j]);
  }
  return out;
}

DependencyGraph dependency_graph(const NGFamily& n) { return DependencyGraph(n); }

CheckReport check_batch(const NGFamily& n, TraversalStats* stats) {
  const DependencyGraph g(n);
  if (dfs_postorder(g, stats, nullptr)) return {};
  return {false, first_lexical_cycle(g, stats)};
}

std::optional<std::vector<Term>> topological_order(const NGFamily& n, TraversalStats* stats) {
  const DependencyGraph g(n);
  std::vector<std::uint32_t> order;
  if (!dfs_postorder(g, stats, &order)) return std::nullopt;
  std::vector<Term> names;
  names.reserve(order.size());
  for (std::uint32_t i : order) names.push_back(g.node(i));
  return names;
}

std::optional<std::uint64_t> LevelAssignment::get(Term t) const {
  auto it = levels_.find(t);
  if (it == levels_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Term, std::uint64_t>> LevelAssignment::sorted() const {
  std::vector<std::pair<Term, std::uint64_t>> out(levels_.begin(), levels_.end());
  const LexicalLess less;
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return less(a.first, b.first); });
  return out;
}

LevelAssignment infer_levels(const NGFamily& n) {
  const DependencyGraph g(n);
  std::vector<std::uint32_t> order;
  if (!dfs_postorder(g, nullptr, &order)) throw CycleError(first_lexical_cycle(g, nullptr));

  std::vector<std::uint64_t> level(g.node_count(), 0);
  for (std::uint32_t v : order) {
    std::uint64_t highest = 0;
    for (std::uint32_t w : g.successors(v)) highest = std::max(highest, level[w]);
    level[v] = highest + 1;
  }

  LevelAssignment out;
  for (const auto& a : n) {
    for (Term t : {a.triple.subject, a.triple.predicate, a.triple.object}) {
      if (!g.index_of(t)) out.set(t, 0);
    }
  }
  for (std::uint32_t v = 0; v < g.node_count(); ++v) out.set(g.node(v), level[v]);
  return out;
}

bool verify_levels(const NGFamily& n, const LevelAssignment& levels) {
  for (const auto& a : n) {
    const auto top = levels.get(a.name);
    if (!top) return false;
    for (Term t : {a.triple.subject, a.triple.predicate, a.triple.object}) {
      const auto below = levels.get(t);
      if (!below || !(*top > *below)) return false;
    }
  }
  return true;
}

NGFamily slice(const NGFamily& n, std::uint64_t max_level) {
  const LevelAssignment levels = infer_levels(n);
  FamilyBuilder out;
  for (const auto& a : n) {
    if (*levels.get(a.name) <= max_level) out.push(a);
  }
  return std::move(out).build();
}

}  // namespace ngstrat
