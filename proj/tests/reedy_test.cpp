#include <gtest/gtest.h>

#include "procat/io.hpp"
#include "procat/reedy.hpp"
#include "procat/testing/fixtures.hpp"
#include "procat/testing/generators.hpp"

using namespace procat;
using Dia = Diagram<FinSets>;
using Nat = NatTrans<FinSets>;

TEST(Reedy, SinglePointMatchesBaseFactorization) {
  gen::Rng rng(41);
  FinPoset pt = FinPoset::antichain({"o"});
  for (int i = 0; i < 50; ++i) {
    FinSet a(gen::uniform(rng, 0, 4)), b(gen::uniform(rng, 1, 4));
    FinMap f = gen::random_map(rng, a, b);
    Nat t(gen::constant(pt, a), gen::constant(pt, b), {f});
    auto r = reedy(t);
    auto base = FinSets::factorize(f);
    ASSERT_TRUE(r.report.ok());
    ASSERT_EQ(r.mid.at(0).size(), base.mid.size());
    ASSERT_EQ(r.g.at(0).images, base.left.images);
    ASSERT_EQ(r.h.at(0).images, base.right.images);
  }
}

TEST(Reedy, IdentityOverWedge) {
  FinPoset V = fixtures::wedge();
  FinSet c2 = FinSet::of({"0", "1"}), one = FinSet::of({"0"});
  Dia D(V, {one, one, c2}, {{2, 0, FinMap(c2, one, {0, 0})}, {2, 1, FinMap(c2, one, {0, 0})}});
  auto r = reedy(identity_trans(D));
  EXPECT_TRUE(r.report.composite);
  EXPECT_TRUE(r.report.levelwise_N);
  EXPECT_TRUE(r.report.special_M);
  for (Elem x = 0; x < V.size(); ++x) EXPECT_TRUE(FinSets::equal(FinSets::compose(r.h.at(x), r.g.at(x)), FinSets::identity(D.at(x))));
}

TEST(Reedy, RandomTransformationsFactor) {
  gen::Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 6));
    Nat f = gen::random_trans(rng, P, 4);
    auto r = reedy(f);
    ASSERT_TRUE(r.report.ok()) << io::write_trans(f).dump();
    ASSERT_TRUE(equal(compose(r.h, r.g), f));
    ASSERT_TRUE(is_levelwise(r.g, MapClass::N));
    ASSERT_TRUE(is_special(r.h, MapClass::M));
  }
}

TEST(Reedy, VerifierCatchesWrongFactor) {
  gen::Rng rng(43);
  FinPoset C = FinPoset::chain(2, "c");
  Nat f = gen::random_trans(rng, C, 3);
  auto r = reedy(f);
  // h ∘ g = f fails once g is replaced by the identity on a different f.
  Nat other = identity_trans(f.source());
  auto rep = verify_reedy(f, other, other);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.failures.empty());
}

TEST(Reedy, Deterministic) {
  gen::Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    Nat f = gen::random_trans(rng, P, 3);
    ASSERT_EQ(io::write_reedy(reedy(f)).dump(), io::write_reedy(reedy(f)).dump());
  }
}

TEST(Reedy, EmptyFibers) {
  FinPoset V = fixtures::wedge();
  Dia E = gen::empty_diagram(V);
  auto r = reedy(identity_trans(E));
  EXPECT_TRUE(r.report.ok());
  for (Elem x = 0; x < V.size(); ++x) EXPECT_EQ(r.mid.at(x).size(), 0u);
}
