#include "ngstrat/term.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "absl/container/flat_hash_map.h"
#include "ngstrat/syntax.hpp"

namespace ngstrat {
namespace {

// Append-only; deque keeps element addresses stable so views handed out
// by lexical() never dangle.
class TermPool {
 public:
  static TermPool& instance() {
    static TermPool pool;
    return pool;
  }

  std::uint32_t intern(TermKind kind, std::string_view lexical) {
    auto& index = kind == TermKind::iri ? iris_ : literals_;
    {
      std::shared_lock lock(mutex_);
      if (auto it = index.find(lexical); it != index.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = index.find(lexical); it != index.end()) return it->second;
    if (strings_.size() >= (std::size_t{1} << 31) - 1) {
      throw std::length_error("term pool exhausted");
    }
    const auto slot = static_cast<std::uint32_t>(strings_.size());
    strings_.emplace_back(lexical);
    const std::uint32_t raw = (slot << 1) | (kind == TermKind::literal ? 1u : 0u);
    index.emplace(std::string_view(strings_.back()), raw);
    return raw;
  }

  std::string_view lexical(std::uint32_t raw) const {
    std::shared_lock lock(mutex_);
    return strings_[raw >> 1];
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return strings_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<std::string> strings_;
  absl::flat_hash_map<std::string_view, std::uint32_t> iris_;
  absl::flat_hash_map<std::string_view, std::uint32_t> literals_;
};

}  // namespace

Term Term::make(TermKind kind, std::string_view lexical) {
  return Term(TermPool::instance().intern(kind, lexical));
}

Term Term::iri(std::string_view lexical) { return make(TermKind::iri, lexical); }

Term Term::literal(std::string_view lexical) { return make(TermKind::literal, lexical); }

std::string_view Term::lexical() const {
  if (!valid()) throw std::logic_error("lexical() on an invalid term");
  return TermPool::instance().lexical(raw_);
}

bool LexicalLess::operator()(Term a, Term b) const {
  if (a == b) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  return a.lexical() < b.lexical();
}

std::string to_string(Term t) {
  if (!t.valid()) return "<?>";
  std::string out;
  if (t.is_iri()) {
    out += '<';
    out += escape_iri(t.lexical());
    out += '>';
  } else {
    out += '"';
    out += escape_literal(t.lexical());
    out += '"';
  }
  return out;
}

std::size_t interned_term_count() { return TermPool::instance().size(); }

}  // namespace ngstrat
