#pragma once

// Straightforward reference implementations used as test oracles. They work
// on std::map / std::set and recompute everything from definitions, sharing
// no code with the library beyond the Term and NGFamily value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ngstrat/family.hpp"

namespace ngstrat::oracle {

using Plain = std::map<Term, Triple>;

inline Plain plain(const NGFamily& n) {
  Plain out;
  for (const Assignment& a : n) out.emplace(a.name, a.triple);
  return out;
}

inline NGFamily family(const Plain& p) {
  std::vector<Assignment> as;
  for (const auto& [name, t] : p) as.push_back({name, t});
  return NGFamily::from_assignments(std::move(as));
}

inline std::set<Term> conflicts(const Plain& a, const Plain& b) {
  std::set<Term> out;
  for (const auto& [name, t] : a) {
    auto it = b.find(name);
    if (it != b.end() && it->second != t) out.insert(name);
  }
  return out;
}

inline Plain meet(const Plain& a, const Plain& b) {
  Plain out;
  for (const auto& [name, t] : a) {
    auto it = b.find(name);
    if (it != b.end() && it->second == t) out.emplace(name, t);
  }
  return out;
}

inline std::optional<Plain> join(const Plain& a, const Plain& b) {
  if (!conflicts(a, b).empty()) return std::nullopt;
  Plain out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline Plain keep_left(const Plain& a, const Plain& b) {
  Plain out = b;
  for (const auto& [name, t] : a) out[name] = t;
  return out;
}

inline Plain drop_both(const Plain& a, const Plain& b) {
  const std::set<Term> c = conflicts(a, b);
  Plain out;
  for (const auto& [name, t] : a) {
    if (!c.contains(name)) out.emplace(name, t);
  }
  for (const auto& [name, t] : b) {
    if (!c.contains(name)) out.emplace(name, t);
  }
  return out;
}

inline bool mentions(const Triple& t, Term x) {
  return t.subject == x || t.predicate == x || t.object == x;
}

/// Peels off names that mention no remaining name; acyclic iff all go.
inline bool acyclic(const NGFamily& n) {
  Plain rest = plain(n);
  bool progress = true;
  while (!rest.empty() && progress) {
    progress = false;
    for (auto it = rest.begin(); it != rest.end();) {
      bool blocked = false;
      for (const auto& [other, t] : rest) {
        if (mentions(it->second, other)) {
          blocked = true;
          break;
        }
      }
      if (blocked) {
        ++it;
      } else {
        it = rest.erase(it);
        progress = true;
      }
    }
  }
  return rest.empty();
}

/// Whether consecutive names (and last to first) are dependency edges.
inline bool is_cycle(const NGFamily& n, const std::vector<Term>& cycle) {
  if (cycle.empty()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Triple* t = n.find(cycle[i]);
    const Term next = cycle[(i + 1) % cycle.size()];
    if (t == nullptr || !n.contains(next) || !mentions(*t, next)) return false;
  }
  return true;
}

/// Least levels by fixpoint iteration; nullopt if they do not stabilise.
inline std::optional<std::map<Term, std::uint64_t>> levels(const NGFamily& n) {
  std::map<Term, std::uint64_t> lv;
  for (const Assignment& a : n) {
    lv[a.name];
    lv[a.triple.subject];
    lv[a.triple.predicate];
    lv[a.triple.object];
  }
  for (std::size_t round = 0; round <= n.size() + 1; ++round) {
    bool changed = false;
    for (const Assignment& a : n) {
      const std::uint64_t want =
          1 + std::max({lv[a.triple.subject], lv[a.triple.predicate], lv[a.triple.object]});
      if (lv[a.name] < want) {
        lv[a.name] = want;
        changed = true;
      }
    }
    if (!changed) return lv;
  }
  return std::nullopt;
}

/// Closure under the transitive / reflexive / symmetric / reverse rules and
/// the (reverse, predicate, symmetric) axiom, by naive saturation: every
/// round re-derives from all facts until nothing new appears. Heads whose
/// predicate is a literal are dropped.
inline std::set<Triple> closure(const NGFamily& n) {
  const Term predicate = Term::iri("predicate");
  const Term transitive = Term::iri("transitive");
  const Term reflexive = Term::iri("reflexive");
  const Term symmetric = Term::iri("symmetric");
  const Term reverse = Term::iri("reverse");

  std::set<Triple> facts;
  for (const Assignment& a : n) facts.insert(a.triple);
  facts.insert({reverse, predicate, symmetric});

  while (true) {
    std::set<Triple> next = facts;
    auto add = [&](Term s, Term p, Term o) {
      if (p.is_iri()) next.insert({s, p, o});
    };
    std::set<Term> vocabulary;
    for (const Triple& t : facts) {
      vocabulary.insert(t.subject);
      vocabulary.insert(t.predicate);
      vocabulary.insert(t.object);
    }
    for (const Triple& decl : facts) {
      if (decl.predicate == predicate && decl.object == transitive) {
        const Term b = decl.subject;
        for (const Triple& x : facts) {
          if (x.predicate != b) continue;
          for (const Triple& y : facts) {
            if (y.predicate == b && y.subject == x.object) add(x.subject, b, y.object);
          }
        }
      }
      if (decl.predicate == predicate && decl.object == reflexive) {
        for (Term a : vocabulary) add(a, decl.subject, a);
      }
      if (decl.predicate == predicate && decl.object == symmetric) {
        for (const Triple& x : facts) {
          if (x.predicate == decl.subject) add(x.object, x.predicate, x.subject);
        }
      }
      if (decl.predicate == reverse) {
        for (const Triple& x : facts) {
          if (x.predicate == decl.subject) add(x.object, decl.object, x.subject);
        }
      }
    }
    if (next.size() == facts.size()) return facts;
    facts = std::move(next);
  }
}

}  // namespace ngstrat::oracle
