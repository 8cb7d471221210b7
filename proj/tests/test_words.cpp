#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace sstkit;
using namespace sstkit::testkit;

namespace {

struct Vars {
  AlphabetPtr X = make_alphabet("X", {"X_a", "X_b", "X_c", "X_d"});
  AlphabetPtr G = make_alphabet("Gamma", {"e", "f"});
  Symbol a = Symbol::var(0), b = Symbol::var(1), c = Symbol::var(2);
};

Substitution random_substitution(Gen& g, const AlphabetPtr& X, const AlphabetPtr& G) {
  std::vector<SymbolString> images;
  for (std::size_t x = 0; x < X->size(); ++x) images.push_back(random_rhs(g, X->size(), G->size(), 3));
  return Substitution(X, G, images);
}

// Token-level hat extension used as an independent reference.
std::vector<std::string> expand(const Substitution& s, const std::vector<std::string>& w) {
  std::vector<std::string> out;
  for (const auto& tok : w) {
    if (auto x = s.variables()->find(tok)) {
      for (auto sym : s.image(*x))
        out.push_back(sym.is_variable() ? s.variables()->token(sym.index) : s.outputs()->token(sym.index));
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

std::vector<std::string> tokens_of(const Substitution& s, const SymbolString& w) {
  std::vector<std::string> out;
  for (auto sym : w) out.push_back(sym.is_variable() ? s.variables()->token(sym.index) : s.outputs()->token(sym.index));
  return out;
}

} // namespace

TEST(Alphabet, RejectsDuplicatesAndReservedTokens) {
  EXPECT_THROW(make_alphabet("A", {"a", "a"}), ValidationError);
  EXPECT_THROW(make_alphabet("A", {"~"}), ValidationError);
  EXPECT_THROW(make_alphabet("A", {"a b"}), ValidationError);
  auto A = make_alphabet("A", {"a", "bc"});
  EXPECT_EQ(A->index_of("bc"), 1u);
  EXPECT_FALSE(A->find("z"));
}

TEST(Word, RendersEmptyWordAsTilde) {
  auto A = make_alphabet("A", {"a", "b"});
  EXPECT_EQ(Word(A).str(), "~");
  EXPECT_EQ(Word::from_tokens(A, {"a", "b", "a"}).str(), "a b a");
}

TEST(Substitution, IdentityLeavesWordUnchanged) {
  auto X = make_alphabet("X", {"X"});
  auto G = make_alphabet("Gamma", {"a", "b"});
  auto id = Substitution::identity(X, G);
  SymbolString w{Symbol::out(0), Symbol::var(0), Symbol::out(1)};
  EXPECT_EQ(apply_substitution(id, w), w);
}

TEST(Substitution, ExampleUpdateOnVariables) {
  Vars v;
  Substitution s(v.X, v.G, {{v.a}, {v.b}, {v.a, v.c, v.b}, {}});
  SymbolString w{v.a, v.c, v.b};
  EXPECT_EQ(s.render(apply_substitution(s, w)), "X_a X_a X_c X_b X_b");
}

TEST(Substitution, ErasingGivesEmptyWord) {
  auto X = make_alphabet("X", {"X", "Y"});
  auto G = make_alphabet("Gamma", {"a"});
  auto eps = Substitution::erasing(X, G);
  SymbolString w{Symbol::var(0), Symbol::var(1), Symbol::var(0)};
  EXPECT_TRUE(apply_substitution(eps, w).empty());
}

TEST(Substitution, RejectsWrongImageCountAndForeignSymbols) {
  Vars v;
  EXPECT_THROW(Substitution(v.X, v.G, {{v.a}}), ValidationError);
  EXPECT_THROW(Substitution(v.X, v.G, {{Symbol::var(9)}, {}, {}, {}}), DomainError);
  EXPECT_THROW(Substitution(v.X, v.G, {{Symbol::out(5)}, {}, {}, {}}), DomainError);
}

TEST(Substitution, ComposeWithIdentity) {
  Gen g(11);
  Vars v;
  auto id = Substitution::identity(v.X, v.G);
  for (int i = 0; i < 50; ++i) {
    auto s = random_substitution(g, v.X, v.G);
    EXPECT_EQ(compose_substitutions(id, s), s);
    EXPECT_EQ(compose_substitutions(s, id), s);
  }
}

TEST(Substitution, IteratedExampleUpdate) {
  Vars v;
  Substitution s(v.X, v.G, {{v.a}, {v.b}, {v.a, v.c, v.b}, {Symbol::var(3)}});
  auto s3 = compose_substitutions(compose_substitutions(s, s), s);
  EXPECT_EQ(s3.render(s3.image(2)), "X_a X_a X_a X_c X_b X_b X_b");
}

TEST(Substitution, CompositionIsAssociative) {
  Gen g(12);
  auto X = make_alphabet("X", {"X", "Y", "Z"});
  auto G = make_alphabet("Gamma", {"a", "b"});
  for (int i = 0; i < 200; ++i) {
    auto s1 = random_substitution(g, X, G), s2 = random_substitution(g, X, G), s3 = random_substitution(g, X, G);
    EXPECT_EQ(compose_substitutions(compose_substitutions(s1, s2), s3),
              compose_substitutions(s1, compose_substitutions(s2, s3)));
  }
}

TEST(Substitution, CompositionMatchesSequentialExpansion) {
  Gen g(13);
  auto X = make_alphabet("X", {"X", "Y", "Z"});
  auto G = make_alphabet("Gamma", {"a", "b"});
  for (int i = 0; i < 200; ++i) {
    auto s1 = random_substitution(g, X, G), s2 = random_substitution(g, X, G);
    SymbolString w = random_rhs(g, 3, 2, 5);
    auto lhs = tokens_of(s1, apply_substitution(compose_substitutions(s1, s2), w));
    EXPECT_EQ(lhs, expand(s1, expand(s2, tokens_of(s1, w))));
  }
}

TEST(Substitution, HatIsAMonoidHomomorphism) {
  Gen g(14);
  auto X = make_alphabet("X", {"X", "Y"});
  auto G = make_alphabet("Gamma", {"a", "b"});
  for (int i = 0; i < 200; ++i) {
    auto s = random_substitution(g, X, G);
    SymbolString u = random_rhs(g, 2, 2, 4), w = random_rhs(g, 2, 2, 4);
    SymbolString uw = u;
    uw.insert(uw.end(), w.begin(), w.end());
    auto left = apply_substitution(s, u), right = apply_substitution(s, w);
    left.insert(left.end(), right.begin(), right.end());
    EXPECT_EQ(apply_substitution(s, uw), left);
  }
}

TEST(Morphism, ExampleImages) {
  auto I = example_instance();
  const auto& A = I.inner;
  EXPECT_EQ(I.pairs[0].h(Word::from_tokens(A, {"c"})).str(), "a c b");
  EXPECT_EQ(I.pairs[0].g(Word::from_tokens(A, {"c", "d"})).str(), "c a d b");
  EXPECT_EQ(I.h(Word(A)).str(), "~");
  EXPECT_EQ(compose_morphisms(I.h, I.pairs[0].h)(Word::from_tokens(A, {"c"})).str(), "e f");
}

TEST(Morphism, IdentityAndCompositionLaws) {
  Gen g(15);
  auto A = make_alphabet("A", {"a", "b", "c"});
  auto B = make_alphabet("B", {"x", "y"});
  auto id = Morphism::identity(A);
  for (int i = 0; i < 200; ++i) {
    auto f = random_morphism(g, A, B, 3);
    auto k = random_morphism(g, A, A, 3);
    auto m = random_morphism(g, A, A, 3);
    EXPECT_EQ(compose_morphisms(f, id), f);
    EXPECT_EQ(compose_morphisms(id, k), k);
    Word w(A, random_letters(g, 3, 6));
    EXPECT_EQ(compose_morphisms(f, k)(w), f(k(w)));
    EXPECT_EQ(compose_morphisms(compose_morphisms(f, k), m), compose_morphisms(f, compose_morphisms(k, m)));
    Word u(A, random_letters(g, 3, 4));
    auto uw = u.letters();
    uw.insert(uw.end(), w.letters().begin(), w.letters().end());
    auto fu = f(u).letters(), fw = f(w).letters();
    fu.insert(fu.end(), fw.begin(), fw.end());
    EXPECT_EQ(f(Word(A, uw)).letters(), fu);
  }
}

TEST(Morphism, RejectsForeignAlphabet) {
  auto A = make_alphabet("A", {"a"});
  auto B = make_alphabet("B", {"x"});
  Morphism f(A, B, {{0}});
  EXPECT_THROW(f(Word(B, {0})), DomainError);
  EXPECT_THROW(Morphism(A, B, {{3}}), DomainError);
  EXPECT_THROW(Morphism(A, B, {}), ValidationError);
}
