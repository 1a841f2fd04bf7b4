#include "ngstrat/store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <optional>
#include <stdexcept>

#include "ngstrat/errors.hpp"
#include "ngstrat/stratify.hpp"

namespace ngstrat {
namespace {

absl::InlinedVector<Term, 3> distinct_components(const Triple& t) {
  absl::InlinedVector<Term, 3> out{t.subject};
  if (t.predicate != t.subject) out.push_back(t.predicate);
  if (t.object != t.subject && t.object != t.predicate) out.push_back(t.object);
  return out;
}

// Relabelling spreads values on a grid this fine; midpoints may then go on
// splitting down to the exponent cap before the next relabel.
constexpr unsigned kRelabelGrid = 128;

}  // namespace

// ---------------------------------------------------------------------------
// OrderMap

const Dyadic* OrderMap::find(Term t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? nullptr : &cells_[it->second].value;
}

std::uint32_t OrderMap::cell_of(std::optional<Term> t) const {
  if (t) {
    if (auto it = terms_.find(*t); it != terms_.end()) return it->second;
  }
  return zero_;
}

const Dyadic* OrderMap::successor(std::optional<Term> anchor) const {
  ++index_ops_;
  const std::uint32_t at = cell_of(anchor);
  const std::uint32_t next = at == kNil ? head_ : cells_[at].next;
  return next == kNil ? nullptr : &cells_[next].value;
}

std::uint32_t OrderMap::link_after(std::uint32_t at, const Dyadic& v) {
  ++index_ops_;
  std::uint32_t cell;
  if (free_.empty()) {
    cell = static_cast<std::uint32_t>(cells_.size());
    cells_.emplace_back();
  } else {
    cell = free_.back();
    free_.pop_back();
  }
  const std::uint32_t next = at == kNil ? head_ : cells_[at].next;
  cells_[cell] = {v, 0, at, next};
  if (next != kNil) cells_[next].prev = cell;
  (at == kNil ? head_ : cells_[at].next) = cell;
  return cell;
}

void OrderMap::bind(Term t, std::uint32_t cell) {
  ++cells_[cell].refs;
  auto [it, inserted] = terms_.try_emplace(t, cell);
  if (inserted) return;
  const std::uint32_t old = it->second;
  it->second = cell;
  release(old);
}

void OrderMap::release(std::uint32_t cell) {
  Cell& c = cells_[cell];
  if (--c.refs != 0) return;
  ++index_ops_;
  (c.prev == kNil ? head_ : cells_[c.prev].next) = c.next;
  if (c.next != kNil) cells_[c.next].prev = c.prev;
  if (cell == zero_) zero_ = kNil;
  c.value = Dyadic{};
  free_.push_back(cell);
}

void OrderMap::assign_zero(Term t) {
  if (zero_ == kNil) {
    zero_ = link_after(kNil, Dyadic{});
  }
  bind(t, zero_);
}

void OrderMap::insert_after(std::optional<Term> after, Term t, const Dyadic& v) {
  const std::uint32_t at = cell_of(after);
  const std::uint32_t next = at == kNil ? head_ : cells_[at].next;
  const bool above = at == kNil ? !v.is_zero() : cells_[at].value < v;
  if (!above || (next != kNil && !(v < cells_[next].value))) {
    throw std::logic_error("order map value out of place");
  }
  bind(t, link_after(at, v));
}

void OrderMap::assign_same(Term t, Term like) { bind(t, terms_.at(like)); }

void OrderMap::clear() {
  terms_.clear();
  cells_.clear();
  free_.clear();
  head_ = zero_ = kNil;
}

bool OrderMap::make_room(std::optional<Term> anchor, unsigned grid_bits, unsigned cap_bits) {
  // Aligned intervals [low, low + 2^-width) around y nest as width shrinks,
  // so the covered run of cells only ever widens. An interval i bits above
  // the grid may hold (2/T)^i values; the smallest one within that density
  // has its interior respread evenly, which bounds the amortized relabel
  // cost. If no interval meets the threshold, take the smallest whose
  // interior merely fits under the cap.
  constexpr double kDensitySlack = 0.415;  // 1 - log2(T) for T = 1.5
  if (cap_bits < 2) return false;
  const std::uint32_t at = cell_of(anchor);
  const Dyadic y = at == kNil ? Dyadic{} : cells_[at].value;
  const unsigned top = std::min(grid_bits, cap_bits - 1);
  for (const bool dense_ok : {false, true}) {
    // The run is [left, right_next), counted in `count`.
    std::uint32_t left = at;
    std::uint32_t left_prev = at == kNil ? kNil : cells_[at].prev;
    std::uint32_t right_next = at == kNil ? head_ : cells_[at].next;
    std::size_t count = at == kNil ? 0 : 1;
    for (unsigned width = top + 1; width-- > 0;) {
      const Dyadic low = y.floor_to(width);
      const std::optional<Dyadic> high = Dyadic::step_up(low, width);
      while (left_prev != kNil && !(cells_[left_prev].value < low)) {
        left = left_prev;
        left_prev = cells_[left].prev;
        ++count;
        ++index_ops_;
      }
      while (right_next != kNil && (!high || cells_[right_next].value < *high)) {
        if (left == kNil) left = right_next;
        right_next = cells_[right_next].next;
        ++count;
        ++index_ops_;
      }
      const bool low_fixed = left != kNil && cells_[left].value == low;
      const std::size_t interior = count - (low_fixed ? 1 : 0);
      const auto parts = static_cast<unsigned>(std::bit_width(interior)) + 2;
      if (width + parts > cap_bits - 1 || parts > 64) continue;
      const unsigned level = top - width;
      if (!dense_ok && std::log2(static_cast<double>(count + 1)) > level * kDensitySlack) continue;

      // Evenly spaced odd multiples keep a gap at both ends.
      const std::uint64_t span = std::uint64_t{1} << (parts - 1);
      std::uint32_t cell = low_fixed ? cells_[left].next : left;
      for (std::size_t i = 0; i < interior; ++i, cell = cells_[cell].next) {
        const std::uint64_t index = 2 * ((i * span) / interior) + 1;
        cells_[cell].value = Dyadic::interpolate(low, high ? &*high : nullptr, index, parts);
        ++index_ops_;
      }
      return true;
    }
  }
  return false;
}

absl::flat_hash_map<Term, Dyadic> OrderMap::values() const {
  absl::flat_hash_map<Term, Dyadic> out;
  out.reserve(terms_.size());
  for (const auto& [t, cell] : terms_) out.emplace(t, cells_[cell].value);
  return out;
}

// ---------------------------------------------------------------------------
// StratifiedStore

struct StratifiedStore::Plan {
  // New values in increasing order, the first placed right above `anchor`
  // and each later one right above its predecessor.
  std::optional<Term> anchor;
  absl::InlinedVector<std::pair<Term, Dyadic>, 2> writes;
  absl::InlinedVector<Term, 3> zeros;
  std::size_t relocated = 0;
  bool over_cap = false;
};

StratifiedStore::StratifiedStore(StoreOptions options) : options_(options) {}

StratifiedStore StratifiedStore::order_init(const NGFamily& n, StoreOptions options) {
  auto order = topological_order(n);
  if (!order) throw CycleError(check_batch(n).cycle);
  StratifiedStore store(options);
  store.assignments_.reserve(n.size());
  for (Term name : *order) {
    if (!store.try_insert(name, *n.find(name))) {
      throw std::logic_error("topological replay rejected an insert");
    }
  }
  return store;
}

std::optional<StratifiedStore::Plan> StratifiedStore::plan_insert(Term name, const Triple& triple,
                                                                  InsertResult& result) {
  const auto components = distinct_components(triple);
  if (std::find(components.begin(), components.end(), name) != components.end()) {
    result.rejection = Rejection::self_reference;
    result.cycle = {name};
    return std::nullopt;
  }

  Plan plan;
  Dyadic y;
  for (Term c : components) {
    const Dyadic* v = order_.find(c);
    if (v == nullptr) {
      plan.zeros.push_back(c);
    } else if (!plan.anchor || y < *v) {
      y = *v;
      plan.anchor = c;
    }
  }

  const Dyadic* current = order_.find(name);
  if (current == nullptr || *current == y) {
    result.kind = current == nullptr ? InsertCase::fresh : InsertCase::promoted;
    plan.writes.emplace_back(name, Dyadic::midpoint(y, order_.successor(plan.anchor)));
  } else if (*current > y) {
    result.kind = InsertCase::unchanged;
  } else {
    // Every term that transitively mentions `name` has a larger value; only
    // those at or below y can be components, and only those must move.
    if (options_.case_a == CaseAPolicy::reject_immediately) {
      result.rejection = Rejection::cycle;
      return std::nullopt;
    }
    absl::flat_hash_map<Term, Term> parent;
    std::vector<Term> region{name};
    parent.emplace(name, name);
    for (std::size_t i = 0; i < region.size(); ++i) {
      auto refs = referrers_.find(region[i]);
      if (refs == referrers_.end()) continue;
      for (Term r : refs->second) {
        if (parent.contains(r)) continue;
        const Dyadic* rv = order_.find(r);
        if (*rv > y) continue;
        parent.emplace(r, region[i]);
        if (std::find(components.begin(), components.end(), r) != components.end()) {
          result.rejection = Rejection::cycle;
          result.cycle = cycle_through(name, r, parent);
          return std::nullopt;
        }
        region.push_back(r);
      }
    }

    std::sort(region.begin(), region.end(), [&](Term a, Term b) {
      const auto& va = *order_.find(a);
      const auto& vb = *order_.find(b);
      if (va != vb) return va < vb;
      return a < b;
    });
    const Dyadic* z = order_.successor(plan.anchor);
    const unsigned parts = static_cast<unsigned>(std::bit_width(region.size()));
    if (parts > 64) throw std::length_error("relocation region too large");
    for (std::size_t i = 0; i < region.size(); ++i) {
      plan.writes.emplace_back(region[i], Dyadic::interpolate(y, z, i + 1, parts));
    }
    plan.relocated = region.size();
    result.kind = InsertCase::relocated;
  }

  for (const auto& [term, value] : plan.writes) {
    if (value.exponent() > options_.exponent_cap) plan.over_cap = true;
  }
  return plan;
}

std::vector<Term> StratifiedStore::cycle_through(
    Term name, Term component, const absl::flat_hash_map<Term, Term>& parent) const {
  std::vector<Term> cycle{name};
  for (Term t = component; t != name; t = parent.at(t)) cycle.push_back(t);
  return cycle;
}

InsertResult StratifiedStore::try_insert(Term name, const Triple& triple) {
  if (!name.is_iri()) throw std::invalid_argument("assignment name must be an IRI");
  if (!triple.predicate.is_iri()) throw std::invalid_argument("predicate must be an IRI");
  if (!triple.subject.valid() || !triple.object.valid()) {
    throw std::invalid_argument("subject and object must be valid terms");
  }
  // The lookups below are independent; issuing them together lets their
  // cache misses overlap in a large store.
  assignments_.prefetch(name);
  order_.prefetch(name);
  for (Term c : {triple.subject, triple.object}) {
    order_.prefetch(c);
    referrers_.prefetch(c);
  }
  if (contains(name)) throw DuplicateName(name);

  order_.reset_index_operations();
  InsertResult result;
  for (int attempt = 0;; ++attempt) {
    auto plan = plan_insert(name, triple, result);
    if (!plan) {
      ++counters_.rejections;
      return result;
    }
    if (plan->over_cap && attempt < 2) {
      // First spread the crowded neighbourhood of the components' maximum;
      // if that is not enough, repack every value by level.
      if (attempt == 0) {
        ++counters_.repacks;
        if (!order_.make_room(plan->anchor, kRelabelGrid, options_.exponent_cap)) {
          repack();
          attempt = 1;
        }
      } else {
        repack();
      }
      result = {};
      continue;
    }
    std::optional<Term> after = plan->anchor;
    for (const auto& [term, value] : plan->writes) {
      order_.insert_after(after, term, value);
      after = term;
    }
    for (Term c : plan->zeros) order_.assign_zero(c);
    if (plan->relocated > 0) {
      ++counters_.relocations;
      counters_.relocated_terms += plan->relocated;
    }
    break;
  }

  assignments_.emplace(name, triple);
  link(name, triple);
  ++counters_.inserts;
  result.accepted = true;
  return result;
}

void StratifiedStore::remove(Term name) {
  auto it = assignments_.find(name);
  if (it == assignments_.end()) throw UnknownName(name);
  unlink(name, it->second);
  assignments_.erase(it);
  ++deletions_;
}

void StratifiedStore::rebuild() {
  const StoreCounters counters = counters_;
  *this = order_init(family(), options_);
  counters_ = counters;
  deletions_ = 0;
}

void StratifiedStore::repack() {
  const LevelAssignment levels = infer_levels(family());
  std::vector<std::pair<std::uint64_t, Term>> by_level;
  by_level.reserve(levels.entries().size());
  for (const auto& [term, level] : levels.entries()) by_level.emplace_back(level, term);
  std::sort(by_level.begin(), by_level.end());
  const auto bits = static_cast<unsigned>(std::bit_width(by_level.empty() ? 0 : by_level.back().first));
  order_.clear();
  std::optional<Term> previous;
  for (std::size_t i = 0; i < by_level.size(); ++i) {
    const auto [level, term] = by_level[i];
    if (i > 0 && by_level[i - 1].first == level) {
      order_.assign_same(term, by_level[i - 1].second);
    } else if (level == 0) {
      order_.assign_zero(term);
    } else {
      order_.insert_after(previous, term, Dyadic::fraction(level, bits));
    }
    previous = term;
  }
  deletions_ = 0;
  ++counters_.global_repacks;
}

void StratifiedStore::link(Term name, const Triple& triple) {
  for (Term c : distinct_components(triple)) referrers_[c].push_back(name);
}

void StratifiedStore::unlink(Term name, const Triple& triple) {
  for (Term c : distinct_components(triple)) {
    auto it = referrers_.find(c);
    if (it == referrers_.end()) continue;
    auto& refs = it->second;
    if (auto pos = std::find(refs.begin(), refs.end(), name); pos != refs.end()) {
      *pos = refs.back();
      refs.pop_back();
    }
    if (refs.empty()) referrers_.erase(it);
  }
}

NGFamily StratifiedStore::family() const {
  std::vector<Assignment> all;
  all.reserve(assignments_.size());
  for (const auto& [name, triple] : assignments_) all.push_back({name, triple});
  return NGFamily::from_assignments(std::move(all));
}

const Triple* StratifiedStore::find(Term name) const {
  auto it = assignments_.find(name);
  return it == assignments_.end() ? nullptr : &it->second;
}

std::optional<Dyadic> StratifiedStore::value(Term t) const {
  if (const Dyadic* v = order_.find(t)) return *v;
  return std::nullopt;
}

bool StratifiedStore::dominance_holds() const {
  for (const auto& [name, triple] : assignments_) {
    const Dyadic* top = order_.find(name);
    if (!top) return false;
    for (Term c : {triple.subject, triple.predicate, triple.object}) {
      const Dyadic* below = order_.find(c);
      if (!below || !(*top > *below)) return false;
    }
  }
  return true;
}

}  // namespace ngstrat
