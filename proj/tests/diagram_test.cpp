#include <gtest/gtest.h>

#include "procat/diagram.hpp"
#include "procat/testing/fixtures.hpp"
#include "procat/testing/generators.hpp"

using namespace procat;
using Dia = Diagram<FinSets>;
using Nat = NatTrans<FinSets>;

namespace {

FinMap constant(const FinSet& s, const FinSet& t, std::size_t v) { return FinMap(s, t, std::vector<std::size_t>(s.size(), v)); }

// X(c1) = {0} → X(c0) = {0, 1} over Y = terminal: both components onto,
// but the relative map at c1 misses one element of the fiber product.
Nat levelwise_not_special() {
  FinPoset C = FinPoset::chain(2, "c");
  FinSet one(1), two(2);
  Dia X(C, {two, one}, {{1, 0, FinMap(one, two, {0})}});
  Dia Y = gen::constant(C, one);
  return Nat(X, Y, {constant(two, one, 0), constant(one, one, 0)});
}

}  // namespace

TEST(Diagram, FillsCompositesAndChecksFunctoriality) {
  FinPoset C = FinPoset::chain(3, "c");
  FinSet s(2);
  FinMap swap(s, s, {1, 0});
  Dia D(C, {s, s, s}, {{2, 1, swap}, {1, 0, swap}});
  EXPECT_TRUE(FinSets::equal(D.map(2, 0), FinSets::identity(s)));
  EXPECT_FALSE(D.functoriality_failure());
  EXPECT_THROW(Dia(C, {s, s, s}, {{2, 1, swap}, {1, 0, swap}, {2, 0, swap}}), ContractViolation);
  EXPECT_THROW(Dia(C, {s, s, s}, {{0, 1, swap}}), ContractViolation);
}

TEST(Restrict, FullAndEmpty) {
  gen::Rng rng(31);
  FinPoset P = gen::random_poset(rng, 4);
  Dia D = gen::random_diagram(rng, P, 3);
  Dia full = restrict(D, P.level_set(static_cast<long>(P.height())));
  ASSERT_EQ(full.size(), D.size());
  for (Elem x = 0; x < P.size(); ++x) EXPECT_TRUE(FinSet::same(full.at(x), D.at(x)));
  EXPECT_EQ(restrict(D, P.level_set(-1)).size(), 0u);
}

TEST(Restrict, MinimalElementsOfWedgeGiveProduct) {
  FinPoset V = fixtures::wedge();
  FinSet x2 = FinSet::of({"x", "y"}), u = FinSet::of({"u", "v", "w"}), c = FinSet::of({"0"});
  Dia D(V, {x2, u, c}, {{2, 0, FinMap(c, x2, {0})}, {2, 1, FinMap(c, u, {2})}});
  Dia R = restrict(D, V.level_set(0));
  EXPECT_EQ(gen::limit_of(R).apex.size(), 6u);
}

TEST(Naturality, DetectsBrokenSquare) {
  FinPoset C = FinPoset::chain(2, "c");
  FinSet s(2);
  FinMap id = FinSets::identity(s), swap(s, s, {1, 0});
  Dia D(C, {s, s}, {{1, 0, id}});
  EXPECT_NO_THROW(Nat(D, D, {id, id}));
  EXPECT_THROW(Nat(D, D, {swap, id}), ContractViolation);
}

TEST(Levelwise, Classes) {
  gen::Rng rng(32);
  FinPoset P = gen::random_poset(rng, 4);
  Dia D = gen::random_diagram(rng, P, 3);
  Nat id = identity_trans(D);
  EXPECT_TRUE(is_levelwise(id, MapClass::N));
  EXPECT_TRUE(is_levelwise(id, MapClass::M));
  FinPoset one = FinPoset::antichain({"o", "p"});
  FinSet two(2), single(1);
  Nat t(gen::constant(one, two), gen::constant(one, single), {constant(two, single, 0), constant(two, single, 0)});
  EXPECT_FALSE(is_levelwise(t, MapClass::N));
  EXPECT_TRUE(is_levelwise(t, MapClass::M));
}

TEST(RelativeMatching, MinimalElementIsTheComponent) {
  gen::Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 4));
    Nat t = gen::random_trans(rng, P, 3);
    for (Elem x = 0; x < P.size(); ++x) {
      if (P.degree(x) != 0) continue;
      FinMap r = relative_matching_map(t, x);
      ASSERT_EQ(r.tgt.size(), t.at(x).tgt.size());
      ASSERT_EQ(r.images, t.at(x).images);
    }
  }
}

TEST(RelativeMatching, IdentityIsBijective) {
  gen::Rng rng(34);
  for (int i = 0; i < 50; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    Nat id = identity_trans(gen::random_diagram(rng, P, 3));
    for (Elem x = 0; x < P.size(); ++x) {
      FinMap r = relative_matching_map(id, x);
      ASSERT_TRUE(r.injective() && r.surjective());
    }
  }
}

TEST(RelativeMatching, TwoChainIntoFiberProduct) {
  Nat t = levelwise_not_special();
  FinMap r = relative_matching_map(t, 1);
  EXPECT_EQ(r.src.size(), 1u);
  EXPECT_EQ(r.tgt.size(), 2u);
  EXPECT_FALSE(r.surjective());
}

TEST(Special, Examples) {
  gen::Rng rng(35);
  FinPoset P = gen::random_poset(rng, 4);
  EXPECT_TRUE(is_special(identity_trans(gen::random_diagram(rng, P, 3)), MapClass::M));
  Nat bad = levelwise_not_special();
  EXPECT_TRUE(is_levelwise(bad, MapClass::M));
  EXPECT_FALSE(is_special(bad, MapClass::M));
  EXPECT_EQ(special_failure(bad, MapClass::M), std::optional<Elem>(1));
  FinPoset pt = FinPoset::antichain({"o"});
  FinSet three(3), two(2);
  Nat onto(gen::constant(pt, three), gen::constant(pt, two), {FinMap(three, two, {0, 1, 1})});
  EXPECT_TRUE(is_special(onto, MapClass::M));
}

TEST(Special, SpecialImpliesLevelwise) {
  gen::Rng rng(36);
  for (int i = 0; i < 200; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    Nat t = gen::random_trans(rng, P, 3);
    for (MapClass c : {MapClass::N, MapClass::M}) ASSERT_TRUE(!is_special(t, c) || is_levelwise(t, c));
  }
}

TEST(Special, GeneratedSurjectionsAreSpecial) {
  gen::Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    ASSERT_TRUE(is_special(gen::random_special_surjection(rng, P, 3), MapClass::M));
  }
}
