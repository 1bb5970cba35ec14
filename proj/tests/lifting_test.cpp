#include <gtest/gtest.h>

#include "procat/io.hpp"
#include "procat/lifting.hpp"
#include "procat/testing/generators.hpp"

using namespace procat;
using Dia = Diagram<FinSets>;
using Nat = NatTrans<FinSets>;

namespace {

FinMap constant(const FinSet& s, const FinSet& t, std::size_t v) { return FinMap(s, t, std::vector<std::size_t>(s.size(), v)); }

}  // namespace

TEST(BruteForce, InjectionAgainstSurjectionAlwaysLifts) {
  gen::Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    auto sq = gen::random_base_square(rng, 3);
    auto o = has_lift_bruteforce(sq.g, sq.f, sq.top, sq.bottom);
    ASSERT_EQ(o.status, SearchStatus::found);
    ASSERT_TRUE(FinSets::equal(FinSets::compose(*o.witness, sq.g), sq.top));
    ASSERT_TRUE(FinSets::equal(FinSets::compose(sq.f, *o.witness), sq.bottom));
  }
}

TEST(BruteForce, InclusionAgainstInclusion) {
  // g: {1} ↪ {1,2} against f: {p} ↪ {p,q}; bottom sends 2 to q, which f misses.
  FinSet one(1), two(2), p = FinSet::of({"p"}), pq = FinSet::of({"p", "q"});
  FinMap g(one, two, {0}), f(p, pq, {0}), top(one, p, {0});
  EXPECT_EQ(has_lift_bruteforce(g, f, top, FinMap(two, pq, {0, 1})).status, SearchStatus::none);
  EXPECT_EQ(has_lift_bruteforce(g, f, top, FinMap(two, pq, {0, 0})).status, SearchStatus::found);
  // A collapsing g against the same f still lifts when top is constant.
  EXPECT_EQ(has_lift_bruteforce(constant(two, one, 0), f, FinMap(two, p, {0, 0}), FinMap(one, pq, {0})).status,
            SearchStatus::found);
}

TEST(BruteForce, IdentityOnTheRightUsesBottom) {
  gen::Rng rng(52);
  FinSet a(2), b(3), x(3);
  FinMap g = gen::random_injection(rng, a, b), bottom = gen::random_map(rng, b, x);
  auto o = has_lift_bruteforce(g, FinSets::identity(x), FinSets::compose(bottom, g), bottom);
  ASSERT_EQ(o.status, SearchStatus::found);
  EXPECT_TRUE(FinSets::equal(*o.witness, bottom));
}

TEST(BruteForce, CapGivesExhausted) {
  FinSet a(1), b(3), x(3);
  FinMap g(a, b, {0}), f = FinSets::identity(x), top(a, x, {0}), bottom(b, x, {0, 1, 2});
  EXPECT_EQ(has_lift_bruteforce(g, f, top, bottom, 1).status, SearchStatus::exhausted);
}

TEST(ConeLift, SinglePointReducesToBaseLift) {
  gen::Rng rng(53);
  FinPoset pt = FinPoset::antichain({"o"});
  for (int i = 0; i < 100; ++i) {
    auto sq = gen::random_base_square(rng, 3);
    LiftingProblem<FinSets> p{sq.g, Nat(gen::constant(pt, sq.f.src), gen::constant(pt, sq.f.tgt), {sq.f}), {sq.top}, {sq.bottom}};
    auto l = lift_against_special(p);
    ASSERT_FALSE(cone_lift_failure(p, l));
    ASSERT_TRUE(FinSets::equal(l.components[0], FinSets::lift(sq.g, sq.f, sq.top, sq.bottom)));
  }
}

TEST(ConeLift, IdentityOnChainExtendsTop) {
  gen::Rng rng(54);
  FinPoset C = FinPoset::chain(2, "c");
  Dia X = gen::random_diagram(rng, C, 3);
  FinSet a(1), b(2);
  while (X.at(0).empty()) X = gen::random_diagram(rng, C, 3);
  // top at the lower element, pushed down the chain from the top one.
  FinMap top1 = gen::random_map(rng, a, X.at(1));
  FinMap g(a, b, {0});
  FinMap bottom1 = gen::random_map(rng, b, X.at(1));
  bottom1.images[0] = top1.images[0];
  LiftingProblem<FinSets> p{g, identity_trans(X), {FinSets::compose(X.map(1, 0), top1), top1},
                            {FinSets::compose(X.map(1, 0), bottom1), bottom1}};
  ASSERT_FALSE(p.failure());
  auto l = lift_against_special(p);
  EXPECT_FALSE(cone_lift_failure(p, l));
  EXPECT_TRUE(FinSets::equal(l.components[1], bottom1));
}

TEST(ConeLift, RandomSpecialProblems) {
  gen::Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    FinPoset T = gen::random_poset(rng, gen::uniform(rng, 1, 5));
    auto p = gen::random_lifting_problem(rng, T, 3);
    ASSERT_FALSE(p.failure());
    auto l = lift_against_special(p);
    ASSERT_FALSE(cone_lift_failure(p, l)) << io::write_lifting_problem(p).dump();
  }
}

TEST(ConeLift, FailureReportsBrokenTriangle) {
  gen::Rng rng(56);
  FinPoset T = FinPoset::antichain({"o"});
  auto p = gen::random_lifting_problem(rng, T, 3);
  while (p.left.tgt.size() == 0 || p.right.source().at(0).size() < 2) p = gen::random_lifting_problem(rng, T, 3);
  auto l = lift_against_special(p);
  auto& img = l.components[0].images;
  img[0] = (img[0] + 1) % p.right.source().at(0).size();
  EXPECT_TRUE(cone_lift_failure(p, l).has_value());
}

TEST(Retract, SurjectionsAreRetracts) {
  gen::Rng rng(57);
  for (int i = 0; i < 100; ++i) {
    FinSet y(gen::uniform(rng, 1, 3)), x(y.size() + gen::uniform(rng, 0, 1));
    auto d = retract_exhibitor(gen::random_surjection(rng, x, y));
    ASSERT_TRUE(d.ok());
  }
  FinSet two(2);
  auto id = retract_exhibitor(FinSets::identity(two));
  EXPECT_TRUE(id.ok());
}

TEST(Retract, NonSurjectionIsRejected) {
  FinSet one(1), two(2);
  EXPECT_THROW(retract_exhibitor(FinMap(one, two, {0})), ContractViolation);
}
