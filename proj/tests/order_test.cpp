#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "procat/order.hpp"
#include "procat/testing/fixtures.hpp"
#include "procat/testing/generators.hpp"

using namespace procat;

namespace {

std::vector<Elem> sorted(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Elem> ids(const FinPoset& p, std::initializer_list<const char*> names) {
  std::vector<Elem> out;
  for (auto n : names) out.push_back(p.index_of(n));
  return sorted(out);
}

// Longest chain ending at x, by enumerating all strictly increasing chains.
std::size_t longest_chain_to(const FinPoset& p, Elem x) {
  std::size_t best = 0;
  for (Elem y = 0; y < p.size(); ++y)
    if (p.lt(y, x)) best = std::max(best, 1 + longest_chain_to(p, y));
  return best;
}

}  // namespace

TEST(Degree, WedgeAndChain) {
  FinPoset V = fixtures::wedge();
  EXPECT_EQ(V.degree("a"), 0u);
  EXPECT_EQ(V.degree("b"), 0u);
  EXPECT_EQ(V.degree("c"), 1u);
  FinPoset C = FinPoset::chain(3);
  EXPECT_EQ(C.degree(C.size() - 1), 2u);
  EXPECT_EQ(C.height(), 2u);
}

TEST(Degree, AgreesWithChainEnumeration) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 7));
    for (Elem x = 0; x < P.size(); ++x) ASSERT_EQ(P.degree(x), longest_chain_to(P, x)) << P.name(x);
  }
}

TEST(Degree, OrderIsByDegreeThenIndex) {
  gen::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 7));
    const auto& order = P.degree_order();
    ASSERT_EQ(order.size(), P.size());
    for (std::size_t k = 1; k < order.size(); ++k) {
      auto prev = std::make_pair(P.degree(order[k - 1]), order[k - 1]);
      auto cur = std::make_pair(P.degree(order[k]), order[k]);
      ASSERT_LT(prev, cur);
    }
  }
}

TEST(LevelSet, Wedge) {
  FinPoset V = fixtures::wedge();
  EXPECT_TRUE(V.level_set(-1).empty());
  EXPECT_EQ(sorted(V.level_set(0).members()), ids(V, {"a", "b"}));
  EXPECT_EQ(V.level_set(7).size(), 3u);
}

TEST(LevelSet, LevelsAreNestedReyshas) {
  gen::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 7));
    for (long n = 0; n <= static_cast<long>(P.height()); ++n) {
      auto lower = P.level_set(n - 1).members(), upper = P.level_set(n).members();
      ASSERT_TRUE(P.is_reysha(upper));
      ASSERT_TRUE(std::includes(upper.begin(), upper.end(), lower.begin(), lower.end()));
    }
    ASSERT_EQ(P.level_set(static_cast<long>(P.height())).size(), P.size());
  }
}

TEST(Reysha, Membership) {
  FinPoset V = fixtures::wedge();
  EXPECT_TRUE(V.is_reysha(ids(V, {"a", "b"})));
  EXPECT_FALSE(V.is_reysha(ids(V, {"c"})));
  EXPECT_TRUE(V.is_reysha(ids(V, {"a", "b", "c"})));
  EXPECT_TRUE(V.is_reysha(std::vector<Elem>{}));
}

TEST(Reysha, ClosureIsSmallestReyshaContaining) {
  gen::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    FinPoset P = gen::random_poset(rng, gen::uniform(rng, 1, 6));
    std::vector<Elem> s;
    for (Elem x = 0; x < P.size(); ++x)
      if (gen::coin(rng, 0.4)) s.push_back(x);
    auto c = P.closure(s).members();
    ASSERT_TRUE(P.is_reysha(c));
    // Every Reysha containing s contains the closure.
    for (std::uint32_t mask = 0; mask < (1u << P.size()); ++mask) {
      std::vector<Elem> r;
      for (Elem x = 0; x < P.size(); ++x)
        if (mask >> x & 1) r.push_back(x);
      if (!P.is_reysha(r) || !std::includes(r.begin(), r.end(), s.begin(), s.end())) continue;
      ASSERT_TRUE(std::includes(r.begin(), r.end(), c.begin(), c.end()));
    }
  }
}

TEST(Directed, Small) {
  EXPECT_TRUE(fixtures::wedge().is_directed());
  EXPECT_FALSE(FinPoset::antichain({"a", "b"}).is_directed());
  EXPECT_TRUE(FinPoset::antichain({"a"}).is_directed());
  EXPECT_FALSE(FinPoset::antichain({}).is_directed());
}

TEST(ConeExtend, AddsApexAboveEverything) {
  FinPoset E = cone_extend(FinPoset::antichain({}));
  EXPECT_EQ(E.size(), 1u);
  FinPoset W = cone_extend(FinPoset::antichain({"a", "b"}));
  ASSERT_EQ(W.size(), 3u);
  const Elem top = W.index_of("inf");
  EXPECT_TRUE(W.lt(W.index_of("a"), top));
  EXPECT_TRUE(W.lt(W.index_of("b"), top));
  EXPECT_TRUE(W.is_directed());
  FinPoset V = fixtures::wedge();
  FinPoset VE = cone_extend(V);
  EXPECT_EQ(VE.size(), 4u);
  EXPECT_TRUE(VE.lt(VE.index_of("c"), VE.index_of("inf")));
  EXPECT_FALSE(VE.is_reysha(std::vector<Elem>{VE.index_of("inf")}));
}

TEST(ConeExtend, ApexNameAvoidsClashes) {
  FinPoset P = FinPoset::antichain({"inf"});
  FinPoset E = cone_extend(P);
  EXPECT_TRUE(E.find("inf'").has_value());
}

TEST(CategoryDirected, ParallelPairFailsAxiomThree) {
  auto v = is_directed_category(fixtures::parallel_pair());
  EXPECT_FALSE(v.directed);
  EXPECT_EQ(v.axiom, 3);
  EXPECT_EQ(v.witness, (std::vector<std::string>{"f", "g"}));
}

TEST(CategoryDirected, Fixtures) {
  for (const auto& [name, c] : fixtures::directed_categories()) EXPECT_TRUE(is_directed_category(c).directed) << name;
  auto empty = is_directed_category(FinCategory({}, {}, {}, {}));
  EXPECT_FALSE(empty.directed);
  EXPECT_EQ(empty.axiom, 1);
  auto two = is_directed_category(FinCategory::from_poset(FinPoset::antichain({"a", "b"})));
  EXPECT_FALSE(two.directed);
  EXPECT_EQ(two.axiom, 2);
}

TEST(CategoryDirected, AgreesWithPosetView) {
  gen::Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    FinPoset P = gen::coin(rng, 0.5) ? gen::random_directed(rng, gen::uniform(rng, 0, 5))
                                     : gen::random_poset(rng, gen::uniform(rng, 1, 5), 0.5);
    ASSERT_EQ(is_directed_category(FinCategory::from_poset(P)).directed, P.is_directed());
  }
}

TEST(Category, CompositionTableIsAssociative) {
  FinCategory c = fixtures::equalized_pair();
  for (FinCategory::Mor h = 0; h < c.arrow_count(); ++h)
    for (FinCategory::Mor g = 0; g < c.arrow_count(); ++g)
      for (FinCategory::Mor f = 0; f < c.arrow_count(); ++f) {
        if (c.arrow(g).source != c.arrow(f).target || c.arrow(h).source != c.arrow(g).target) continue;
        EXPECT_EQ(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
      }
}
