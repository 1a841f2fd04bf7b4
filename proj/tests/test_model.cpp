#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "generators.hpp"
#include "ngstrat/algebra.hpp"
#include "ngstrat/errors.hpp"
#include "ngstrat/family.hpp"

namespace ngstrat {
namespace {

using testgen::iri;
using testgen::lit;

const Term a = iri("a"), b = iri("b"), c = iri("c"), x = iri("x"), y = iri("y"), u = iri("u");

TEST(Term, IrisAndLiteralsAreDisjoint) {
  EXPECT_NE(Term::iri("a"), Term::literal("a"));
  EXPECT_EQ(Term::iri("a"), Term::iri("a"));
  EXPECT_TRUE(Term::literal("a").is_literal());
  EXPECT_TRUE(Term::iri("a").is_iri());
  EXPECT_EQ(Term::literal("a").lexical(), "a");
  EXPECT_FALSE(Term{}.valid());
}

TEST(Term, RendersEscaped) {
  EXPECT_EQ(to_string(Term::iri("http://e.org/x")), "<http://e.org/x>");
  EXPECT_EQ(to_string(Term::literal("say \"hi\"\n")), "\"say \\\"hi\\\"\\n\"");
  EXPECT_EQ(to_string(Term::iri("a b")), "<a\\u0020b>");
}

TEST(Term, LexicalOrderPutsIrisFirst) {
  LexicalLess less;
  EXPECT_TRUE(less(Term::iri("b"), Term::iri("c")));
  EXPECT_TRUE(less(Term::iri("z"), Term::literal("a")));
  EXPECT_FALSE(less(Term::iri("a"), Term::iri("a")));
}

TEST(Family, AtomicAssignsExactlyOneName) {
  const NGFamily n = atomic(x, a, b, c);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(*n.find(x), (Triple{a, b, c}));
  EXPECT_EQ(support(n), std::vector<Term>{x});
  // Self-mention is constructible; stratification rejects it later.
  EXPECT_EQ(atomic(x, x, b, c).size(), 1u);
}

TEST(Family, SupportOfExamples) {
  EXPECT_TRUE(support(NGFamily{}).empty());
  const NGFamily n = NGFamily::from_assignments({{x, {y, b, c}}, {y, {a, b, c}}});
  auto s = support(n);
  std::sort(s.begin(), s.end(), LexicalLess{});
  EXPECT_EQ(s, (std::vector<Term>{x, y}));
}

TEST(Family, BuildRejectsInconsistentNamesAndBadPositions) {
  EXPECT_THROW(NGFamily::from_assignments({{u, {a, b, c}}, {u, {c, b, a}}}), ConflictError);
  EXPECT_EQ(NGFamily::from_assignments({{u, {a, b, c}}, {u, {a, b, c}}}).size(), 1u);
  EXPECT_THROW(NGFamily::from_assignments({{lit("u"), {a, b, c}}}), std::invalid_argument);
  EXPECT_THROW(NGFamily::from_assignments({{u, {a, lit("b"), c}}}), std::invalid_argument);
  // Literal subjects and objects are allowed in the model.
  EXPECT_NO_THROW(NGFamily::from_assignments({{u, {lit("s"), b, lit("o")}}}));
}

TEST(Family, ConflictSetExamples) {
  const NGFamily n1 = atomic(u, a, b, c), n2 = atomic(u, iri("a'"), b, c);
  EXPECT_EQ(conflict_set(n1, n2), std::vector<Term>{u});
  EXPECT_TRUE(conflict_set(n1, n1).empty());
}

// All families over names {u, v} with triples (s, b, o), s and o drawn
// from the 4-term vocabulary {u, v, a, b}.
std::vector<NGFamily> four_term_families() {
  const std::vector<Term> terms = {iri("u"), iri("v"), a, b};
  std::vector<Triple> triples;
  for (Term s : terms) {
    for (Term o : terms) triples.push_back({s, b, o});
  }
  std::vector<NGFamily> out;
  for (std::size_t i = 0; i <= triples.size(); ++i) {
    for (std::size_t j = 0; j <= triples.size(); ++j) {
      std::vector<Assignment> as;
      if (i > 0) as.push_back({iri("u"), triples[i - 1]});
      if (j > 0) as.push_back({iri("v"), triples[j - 1]});
      out.push_back(NGFamily::from_assignments(std::move(as)));
    }
  }
  return out;
}

TEST(Family, ConflictSetIsSymmetricExhaustively) {
  const auto all = four_term_families();
  ASSERT_EQ(all.size(), 289u);
  for (const NGFamily& n1 : all) {
    for (const NGFamily& n2 : all) ASSERT_EQ(conflict_set(n1, n2), conflict_set(n2, n1));
  }
}

TEST(Family, ConflictSetMatchesJoinability) {
  const auto all = testgen::exhaustive_families();
  for (const NGFamily& n1 : all) {
    for (const NGFamily& n2 : all) {
      if (conflict_set(n1, n2).empty()) {
        EXPECT_NO_THROW(join(n1, n2));
      } else {
        EXPECT_THROW(join(n1, n2), ConflictError);
      }
    }
  }
}

TEST(Family, ExtendsExamples) {
  std::mt19937 rng(7);
  const auto uni = testgen::Universe::small(5, 3);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(extends(NGFamily{}, testgen::random_family(rng, uni)));
  EXPECT_TRUE(extends(atomic(x, a, b, c),
                      NGFamily::from_assignments({{x, {a, b, c}}, {y, {a, b, c}}})));
}

TEST(Family, ExtendsDistinguishesTriplesOverThreeTerms) {
  const std::vector<Term> terms = {a, b, c};
  std::vector<Triple> triples;
  for (Term s : terms) {
    for (Term p : terms) {
      for (Term o : terms) triples.push_back({s, p, o});
    }
  }
  for (const Triple& t1 : triples) {
    for (const Triple& t2 : triples) {
      EXPECT_EQ(extends(atomic(x, t1.subject, t1.predicate, t1.object),
                        atomic(x, t2.subject, t2.predicate, t2.object)),
                t1 == t2);
    }
  }
}

TEST(Family, ExtendsIsAPartialOrderExhaustively) {
  const auto all = testgen::exhaustive_families();
  for (const NGFamily& n1 : all) {
    EXPECT_TRUE(extends(n1, n1));
    for (const NGFamily& n2 : all) {
      if (extends(n1, n2) && extends(n2, n1)) EXPECT_TRUE(equiv(n1, n2));
      if (equiv(n1, n2)) EXPECT_EQ(n1, n2);
      if (!extends(n1, n2)) continue;
      for (const NGFamily& n3 : all) {
        if (extends(n2, n3)) EXPECT_TRUE(extends(n1, n3));
      }
    }
  }
}

TEST(Family, EquivAndCanonicalize) {
  std::mt19937 rng(11);
  const auto uni = testgen::Universe::small(6, 3);
  EXPECT_FALSE(equiv(NGFamily{}, atomic(x, a, b, c)));
  EXPECT_EQ(canonicalize(NGFamily{}), NGFamily{});
  for (int i = 0; i < 200; ++i) {
    const NGFamily n = testgen::random_family(rng, uni);
    EXPECT_TRUE(equiv(n, n));
    EXPECT_TRUE(equiv(n, canonicalize(n)));
    EXPECT_EQ(canonicalize(canonicalize(n)), canonicalize(n));
  }
}

TEST(Family, VocabularyIsTheOccurringTerms) {
  const NGFamily n = NGFamily::from_assignments({{x, {y, b, c}}, {y, {a, b, lit("c")}}});
  auto v = n.vocabulary();
  std::sort(v.begin(), v.end(), LexicalLess{});
  EXPECT_EQ(v, (std::vector<Term>{a, b, c, x, y, lit("c")}));
}

TEST(Rename, SingleEntryAndIdentity) {
  RenamingMap sigma;
  sigma.insert(u, iri("u'"));
  EXPECT_EQ(rename(atomic(u, a, b, c), sigma), atomic(iri("u'"), a, b, c));
  const NGFamily n = NGFamily::from_assignments({{x, {y, b, c}}, {y, {a, b, c}}});
  EXPECT_EQ(rename(n, RenamingMap{}), n);
}

TEST(Rename, RenamesEveryPosition) {
  RenamingMap sigma;
  sigma.insert(y, iri("y2"));
  const NGFamily n = NGFamily::from_assignments({{x, {y, b, c}}, {y, {a, b, c}}});
  const NGFamily expected = NGFamily::from_assignments({{x, {iri("y2"), b, c}}, {iri("y2"), {a, b, c}}});
  EXPECT_EQ(rename(n, sigma), expected);
}

TEST(Rename, RejectsNonInjectiveOrLiteralTargets) {
  RenamingMap sigma;
  sigma.insert(a, c);  // c already occurs in the family
  EXPECT_THROW(rename(atomic(x, a, b, c), sigma), RenameError);

  RenamingMap to_literal;
  to_literal.insert(x, lit("x"));
  EXPECT_THROW(rename(atomic(x, a, b, c), to_literal), RenameError);
  RenamingMap pred_to_literal;
  pred_to_literal.insert(b, lit("b"));
  EXPECT_THROW(rename(atomic(x, a, b, c), pred_to_literal), RenameError);

  RenamingMap twice;
  twice.insert(a, iri("z"));
  EXPECT_THROW(twice.insert(b, iri("z")), RenameError);
  EXPECT_THROW(twice.insert(a, iri("w")), RenameError);
}

TEST(Rename, InverseRestoresAndPreservesSupportSize) {
  std::mt19937 rng(3);
  const auto uni = testgen::Universe::small(6, 4);
  for (int i = 0; i < 300; ++i) {
    const NGFamily n = testgen::random_family(rng, uni);
    // A random bijection from the IRIs of the universe onto fresh IRIs.
    RenamingMap sigma;
    for (Term t : uni.subjects) {
      if (testgen::coin(rng, 0.5)) sigma.insert(t, iri("fresh:" + std::string(t.lexical())));
    }
    const NGFamily renamed = rename(n, sigma);
    EXPECT_EQ(renamed.size(), n.size());
    EXPECT_EQ(rename(renamed, sigma.inverse()), n);
  }
}

TEST(Algebra, JoinOfDisjointSupportsAddsSizes) {
  std::mt19937 rng(5);
  const auto uni = testgen::Universe::small(10, 4);
  for (int i = 0; i < 300; ++i) {
    std::vector<Assignment> left, right;
    for (Term name : uni.names) {
      if (!testgen::coin(rng, 0.7)) continue;
      (testgen::coin(rng, 0.5) ? left : right).push_back({name, testgen::random_triple(rng, uni)});
    }
    const NGFamily n1 = NGFamily::from_assignments(left), n2 = NGFamily::from_assignments(right);
    EXPECT_EQ(support(join(n1, n2)).size(), support(n1).size() + support(n2).size());
  }
}

}  // namespace
}  // namespace ngstrat
